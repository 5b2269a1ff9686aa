#include "bubbles/table_io.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "bubbles/errors.hpp"

namespace bubbles {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

BigInt parse_integer(const std::string& field, std::size_t line_no) {
  BigInt v;
  if (field.empty() || v.set_str(field, 10) != 0) {
    throw ParseError("line " + std::to_string(line_no) + ": bad integer '" + field + "'");
  }
  return v;
}

unsigned parse_index(const std::string& field, std::size_t line_no) {
  const BigInt v = parse_integer(field, line_no);
  if (v < 0 || !v.fits_uint_p()) {
    throw ParseError("line " + std::to_string(line_no) + ": index out of range '" + field + "'");
  }
  return static_cast<unsigned>(v.get_ui());
}

// Reads "a,b,value" records after the expected header into rows keyed by a.
std::map<unsigned, std::map<unsigned, BigInt>> read_triples(std::istream& in, const std::string& header) {
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  std::map<unsigned, std::map<unsigned, BigInt>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != header) throw ParseError("expected CSV header '" + header + "', got '" + line + "'");
      saw_header = true;
      continue;
    }
    std::stringstream ss(line);
    std::string a, b, v;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, v) ||
        v.find(',') != std::string::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected three comma-separated fields");
    }
    rows[parse_index(trim(a), line_no)][parse_index(trim(b), line_no)] = parse_integer(trim(v), line_no);
  }
  if (!saw_header) throw ParseError("empty CSV input");
  return rows;
}

}  // namespace

void write_csv(std::ostream& out, const BubbleTable& t) {
  out << "n,p,B\n";
  for (const auto& [n, row] : t.rows()) {
    for (std::size_t p = 1; p <= row.size(); ++p) out << n << ',' << p << ',' << row[p - 1].get_str() << '\n';
  }
}

void write_csv(std::ostream& out, const ShortChordTable& t) {
  out << "n,s,d\n";
  for (const auto& [n, row] : t.rows()) {
    for (std::size_t s = 0; s < row.size(); ++s) out << n << ',' << s << ',' << row[s].get_str() << '\n';
  }
}

BubbleTable read_bubble_table_csv(std::istream& in) {
  BubbleTable t;
  for (auto& [n, entries] : read_triples(in, "n,p,B")) {
    std::vector<BigInt> row;
    unsigned expect = 1;
    for (auto& [p, v] : entries) {
      if (p != expect++) throw ParseError("bubble table row " + std::to_string(n) + " is not contiguous");
      row.push_back(std::move(v));
    }
    try {
      t.set_row(n, std::move(row));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
  return t;
}

ShortChordTable read_short_chord_table_csv(std::istream& in) {
  ShortChordTable t;
  for (auto& [n, entries] : read_triples(in, "n,s,d")) {
    std::vector<BigInt> row;
    unsigned expect = 0;
    for (auto& [s, v] : entries) {
      if (s != expect++) throw ParseError("short chord row " + std::to_string(n) + " is not contiguous");
      row.push_back(std::move(v));
    }
    try {
      t.set_row(n, std::move(row));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
  return t;
}

void write_json(std::ostream& out, const BubbleTable& t) {
  // Values are strings: they exceed any JSON number precision quickly.
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [n, row] : t.rows()) {
    nlohmann::json values = nlohmann::json::array();
    for (const auto& v : row) values.push_back(v.get_str());
    rows.push_back({{"n", n}, {"B", std::move(values)}});
  }
  out << nlohmann::json{{"rows", std::move(rows)}}.dump(2) << '\n';
}

void write_plain(std::ostream& out, const BubbleTable& t) {
  for (const auto& [n, row] : t.rows()) {
    out << n << ':';
    for (const auto& v : row) out << ' ' << v.get_str();
    out << '\n';
  }
}

std::vector<BFileEntry> parse_bfile(std::istream& in) {
  std::vector<BFileEntry> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    std::istringstream ss(body);
    std::string idx, val, extra;
    if (!(ss >> idx >> val) || (ss >> extra)) {
      throw ParseError("b-file line " + std::to_string(line_no) + ": expected 'index value'");
    }
    const BigInt index = parse_integer(idx, line_no);
    if (!index.fits_slong_p()) throw ParseError("b-file line " + std::to_string(line_no) + ": index too large");
    out.push_back({index.get_si(), parse_integer(val, line_no)});
  }
  return out;
}

std::vector<BFileEntry> read_bfile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open b-file " + path.string());
  return parse_bfile(in);
}

void write_bfile(std::ostream& out, const std::vector<BigInt>& terms, std::int64_t offset) {
  for (std::size_t k = 0; k < terms.size(); ++k) {
    out << static_cast<std::int64_t>(k) + offset << ' ' << terms[k].get_str() << '\n';
  }
}

std::string sequence_name(OeisSequence s) {
  switch (s) {
    case OeisSequence::A367000: return "A367000";
    case OeisSequence::A278990: return "A278990";
    case OeisSequence::A079267: return "A079267";
  }
  return "unknown";
}

std::int64_t sequence_offset(OeisSequence s) { return s == OeisSequence::A367000 ? 1 : 0; }

std::vector<BigInt> sequence_terms(OeisSequence s, const BubbleTable& b, const ShortChordTable& d) {
  std::vector<BigInt> out;
  switch (s) {
    case OeisSequence::A367000:
      for (unsigned n = 1; b.has_row(n); ++n) {
        for (const auto& v : b.row(n)) out.push_back(v);
      }
      break;
    case OeisSequence::A278990:
      out.push_back(BigInt(1));
      for (unsigned n = 1; d.has_row(n); ++n) out.push_back(d.at(n, 0));
      break;
    case OeisSequence::A079267:
      out.push_back(BigInt(1));
      for (unsigned n = 1; d.has_row(n); ++n) {
        for (const auto& v : d.row(n)) out.push_back(v);
      }
      break;
  }
  return out;
}

BFileComparison compare_bfile(const std::vector<BFileEntry>& entries, const std::vector<BigInt>& expected,
                              std::int64_t offset) {
  BFileComparison c;
  for (const auto& e : entries) {
    const std::int64_t k = e.index - offset;
    if (k < 0 || k >= static_cast<std::int64_t>(expected.size())) {
      ++c.skipped;
      continue;
    }
    ++c.compared;
    if (e.value != expected[static_cast<std::size_t>(k)]) {
      c.mismatches.push_back("index " + std::to_string(e.index) + ": b-file has " + e.value.get_str() +
                             ", computed " + expected[static_cast<std::size_t>(k)].get_str());
    }
  }
  return c;
}

}  // namespace bubbles
