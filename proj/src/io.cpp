#include "multdefl/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace multdefl {

namespace {

// Thrown by the exact parser on a decimal literal; the caller retries in
// the floating domain.
struct NeedsFloat {};

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

template <class K>
class PolyParser {
 public:
  PolyParser(const std::string& text, const std::vector<std::string>& names, int line, int col0)
      : s_(text), names_(names), line_(line), col0_(col0) {}

  MPoly<K> parse() {
    skip();
    if (pos_ == s_.size()) fail("empty polynomial");
    MPoly<K> p = expr();
    skip();
    if (pos_ != s_.size()) fail(std::string("unexpected character '") + s_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col0_ + static_cast<int>(pos_) + 1); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  std::size_t n() const { return names_.size(); }

  MPoly<K> expr() {
    MPoly<K> acc(n());
    bool first = true;
    for (;;) {
      skip();
      int sign = 1;
      if (peek('+') || peek('-')) {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        break;
      }
      MPoly<K> t = term();
      if (sign < 0) {
        acc -= t;
      } else {
        acc += t;
      }
      first = false;
    }
    return acc;
  }

  bool starts_primary() {
    skip();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '(' || std::isalpha(static_cast<unsigned char>(c)) ||
           c == '_';
  }

  MPoly<K> term() {
    MPoly<K> acc = power();
    for (;;) {
      if (peek('*') && !(pos_ + 1 < s_.size() && s_[pos_ + 1] == '*')) {
        ++pos_;
        acc = acc * power();
      } else if (peek('/')) {
        const std::size_t at = pos_++;
        MPoly<K> d = power();
        if (!d.is_constant() || d.is_zero()) {
          pos_ = at;
          fail("division by a non-constant or zero expression");
        }
        K inv = CoeffTraits<K>::one();
        inv /= d.constant_term();
        acc *= inv;
      } else if (starts_primary()) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  MPoly<K> power() {
    MPoly<K> base = primary();
    skip();
    bool has = false;
    if (peek('^')) {
      ++pos_;
      has = true;
    } else if (pos_ + 1 < s_.size() && s_[pos_] == '*' && s_[pos_ + 1] == '*') {
      pos_ += 2;
      has = true;
    }
    if (!has) return base;
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a non-negative integer exponent");
    unsigned e = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, e);
    if (ec != std::errc() || e > 1000) {
      pos_ = start;
      fail("exponent out of range");
    }
    return base.pow(e);
  }

  MPoly<K> primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MPoly<K> p = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return p;
    }
    if (c == '-' || c == '+') {
      ++pos_;
      MPoly<K> p = power();
      return c == '-' ? -p : p;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string id = s_.substr(start, pos_ - start);
      for (std::size_t v = 0; v < n(); ++v)
        if (names_[v] == id) return MPoly<K>::variable(n(), v);
      pos_ = start;
      fail("unknown variable '" + id + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  MPoly<K> number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    bool decimal = false;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      decimal = true;
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t q = pos_ + 1;
      if (q < s_.size() && (s_[q] == '+' || s_[q] == '-')) ++q;
      if (q < s_.size() && std::isdigit(static_cast<unsigned char>(s_[q]))) {
        decimal = true;
        pos_ = q;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
    }
    const std::string lit = s_.substr(start, pos_ - start);
    if (lit == ".") {
      pos_ = start;
      fail("malformed number");
    }
    if constexpr (CoeffTraits<K>::exact) {
      if (decimal) throw NeedsFloat{};
      return MPoly<K>::constant(n(), Rational(lit, 10));
    } else {
      return MPoly<K>::constant(n(), Complex(std::stod(lit), 0.0));
    }
  }

  const std::string& s_;
  const std::vector<std::string>& names_;
  int line_;
  int col0_;
  std::size_t pos_ = 0;
};

struct PolyLine {
  std::string text;
  int line;
  int col;
};

double parse_real(const std::string& t) {
  const std::string s = trim(t);
  if (s.empty()) throw InvalidArgument("empty number");
  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rational q;
    try {
      q = Rational(trim(s.substr(0, slash)) + "/" + trim(s.substr(slash + 1)), 10);
    } catch (const std::invalid_argument&) {
      throw InvalidArgument("malformed rational '" + s + "'");
    }
    if (sgn(q.get_den()) == 0) throw InvalidArgument("zero denominator in '" + s + "'");
    q.canonicalize();
    return q.get_d();
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("malformed number '" + s + "'");
  }
  if (used != s.size()) throw InvalidArgument("malformed number '" + s + "'");
  return v;
}

}  // namespace

Complex parse_complex_literal(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw InvalidArgument("empty complex literal");
  if (s.back() != 'i' && s.back() != 'I') return {parse_real(s), 0.0};
  s.pop_back();
  // Split at the last sign that is not a leading sign or part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  std::string re = split == std::string::npos ? "" : s.substr(0, split);
  std::string im = split == std::string::npos ? s : s.substr(split);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return {re.empty() ? 0.0 : parse_real(re), parse_real(im)};
}

std::vector<ExponentVector> parse_exponent_list(const std::string& text, std::size_t n) {
  std::vector<ExponentVector> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    std::replace(item.begin(), item.end(), ',', ' ');
    std::stringstream is(item);
    std::vector<ExponentVector::value_type> e;
    long v;
    while (is >> v) {
      if (v < 0 || v > 1000) throw InvalidArgument("exponent out of range in '" + trim(item) + "'");
      e.push_back(static_cast<ExponentVector::value_type>(v));
    }
    if (!is.eof()) throw InvalidArgument("malformed exponent vector '" + trim(item) + "'");
    if (e.empty() && trim(item).empty()) continue;
    if (e.size() != n)
      throw InvalidArgument("exponent vector '" + trim(item) + "' has length " + std::to_string(e.size()) +
                            ", expected " + std::to_string(n));
    out.emplace_back(std::move(e));
  }
  if (out.empty()) throw InvalidArgument("empty exponent list");
  return out;
}

RationalPoly parse_rational_poly(const std::string& text, const std::vector<std::string>& names) {
  try {
    return PolyParser<Rational>(text, names, 1, 0).parse();
  } catch (const NeedsFloat&) {
    throw InvalidArgument("decimal literal in an exact polynomial");
  }
}

ComplexPoly parse_complex_poly(const std::string& text, const std::vector<std::string>& names) {
  return PolyParser<Complex>(text, names, 1, 0).parse();
}

std::size_t SystemFile::num_polys() const {
  return std::visit([](const auto& s) { return s.size(); }, system);
}

SystemFile parse_system_text(const std::string& text) {
  SystemFile out;
  std::vector<PolyLine> polys;
  bool have_vars = false;
  std::string root_text, basis_text;
  int root_line = 0, basis_line = 0;
  std::stringstream ss(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(ss, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (trim(line).empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'key: value'", lineno, 1);
    const std::string key = trim(line.substr(0, colon));
    const std::string value = line.substr(colon + 1);
    const int vcol = static_cast<int>(colon) + 1;
    if (key == "vars") {
      if (have_vars) throw ParseError("duplicate 'vars' line", lineno, 1);
      std::stringstream vs(value);
      std::string v;
      while (vs >> v) {
        if (!(std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_'))
          throw ParseError("invalid variable name '" + v + "'", lineno, vcol + 1);
        if (std::find(out.names.begin(), out.names.end(), v) != out.names.end())
          throw ParseError("duplicate variable '" + v + "'", lineno, vcol + 1);
        out.names.push_back(v);
      }
      if (out.names.empty()) throw ParseError("no variables declared", lineno, vcol + 1);
      have_vars = true;
    } else if (key == "f") {
      if (!have_vars) throw ParseError("'f' before 'vars'", lineno, 1);
      polys.push_back({value, lineno, vcol});
    } else if (key == "root") {
      root_text = value;
      root_line = lineno;
    } else if (key == "basis") {
      basis_text = value;
      basis_line = lineno;
    } else if (key == "tol" || key == "rank-tol") {
      double v = 0.0;
      try {
        v = parse_real(value);
      } catch (const InvalidArgument& e) {
        throw ParseError(e.what(), lineno, vcol + 1);
      }
      (key == "tol" ? out.tol : out.rank_tol) = v;
    } else {
      throw ParseError("unknown key '" + key + "'", lineno, 1);
    }
  }
  if (!have_vars) throw ParseError("missing 'vars' line", lineno + 1, 1);
  if (polys.empty()) throw ParseError("no polynomials ('f:' lines)", lineno + 1, 1);

  try {
    PolySystem<Rational> sys;
    for (const auto& pl : polys) sys.push_back(PolyParser<Rational>(pl.text, out.names, pl.line, pl.col).parse());
    out.system = std::move(sys);
  } catch (const NeedsFloat&) {
    PolySystem<Complex> sys;
    for (const auto& pl : polys) sys.push_back(PolyParser<Complex>(pl.text, out.names, pl.line, pl.col).parse());
    out.system = std::move(sys);
  }

  if (root_line) {
    std::string r = root_text;
    std::vector<std::string> parts;
    if (r.find(',') != std::string::npos) {
      std::stringstream rs(r);
      std::string p;
      while (std::getline(rs, p, ',')) parts.push_back(p);
    } else {
      std::stringstream rs(r);
      std::string p;
      while (rs >> p) parts.push_back(p);
    }
    for (const auto& p : parts) {
      try {
        out.root.push_back(parse_complex_literal(p));
      } catch (const InvalidArgument& e) {
        throw ParseError(std::string("malformed complex literal: ") + e.what(), root_line, 1);
      }
    }
    if (out.root.size() != out.names.size())
      throw ParseError("root has " + std::to_string(out.root.size()) + " components, expected " +
                           std::to_string(out.names.size()),
                       root_line, 1);
  }
  if (basis_line) {
    try {
      out.basis = parse_exponent_list(basis_text, out.names.size());
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), basis_line, 1);
    }
  }
  return out;
}

SystemFile parse_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_system_text(buf.str());
}

std::string complex_to_string(Complex c) {
  char buf[64];
  if (c.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.17g", c.real());
  } else if (c.real() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.17gi", c.imag());
  } else {
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", c.real(), c.imag());
  }
  return buf;
}

nlohmann::json point_to_json(std::span<const Complex> x) {
  nlohmann::json a = nlohmann::json::array();
  for (auto c : x) a.push_back({c.real(), c.imag()});
  return a;
}

template <class K>
nlohmann::json system_to_json(const PolySystem<K>& f, const std::vector<std::string>& names,
                              const std::vector<std::string>& labels) {
  nlohmann::json j;
  j["format"] = 1;
  j["domain"] = CoeffTraits<K>::name;
  j["variables"] = names;
  nlohmann::json ps = nlohmann::json::array();
  for (std::size_t i = 0; i < f.size(); ++i) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : f[i].terms()) {
      nlohmann::json t;
      t["exponent"] = e.entries();
      if constexpr (CoeffTraits<K>::exact) {
        t["coefficient"] = c.get_str();
      } else {
        t["coefficient"] = {c.real(), c.imag()};
      }
      terms.push_back(std::move(t));
    }
    nlohmann::json p;
    if (i < labels.size()) p["label"] = labels[i];
    p["terms"] = std::move(terms);
    ps.push_back(std::move(p));
  }
  j["polynomials"] = std::move(ps);
  return j;
}

template nlohmann::json system_to_json(const PolySystem<Rational>&, const std::vector<std::string>&,
                                       const std::vector<std::string>&);
template nlohmann::json system_to_json(const PolySystem<Complex>&, const std::vector<std::string>&,
                                       const std::vector<std::string>&);

SystemFile system_from_json(const nlohmann::json& j) {
  try {
    if (j.value("format", 0) != 1) throw InvalidArgument("unsupported JSON format version");
    SystemFile out;
    out.names = j.at("variables").get<std::vector<std::string>>();
    const std::size_t n = out.names.size();
    const std::string domain = j.at("domain").get<std::string>();
    auto read_exp = [&](const nlohmann::json& t) {
      auto e = t.at("exponent").get<std::vector<ExponentVector::value_type>>();
      if (e.size() != n) throw InvalidArgument("exponent length mismatch");
      return ExponentVector(std::move(e));
    };
    if (domain == "rational") {
      PolySystem<Rational> sys;
      for (const auto& p : j.at("polynomials")) {
        RationalPoly q(n);
        for (const auto& t : p.at("terms")) {
          Rational c(t.at("coefficient").get<std::string>(), 10);
          c.canonicalize();
          q.add_term(read_exp(t), c);
        }
        sys.push_back(std::move(q));
      }
      out.system = std::move(sys);
    } else if (domain == "complex") {
      PolySystem<Complex> sys;
      for (const auto& p : j.at("polynomials")) {
        ComplexPoly q(n);
        for (const auto& t : p.at("terms")) {
          const auto& c = t.at("coefficient");
          q.add_term(read_exp(t), Complex(c.at(0).get<double>(), c.at(1).get<double>()));
        }
        sys.push_back(std::move(q));
      }
      out.system = std::move(sys);
    } else {
      throw InvalidArgument("unknown domain '" + domain + "'");
    }
    if (j.contains("root"))
      for (const auto& c : j.at("root")) out.root.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed system JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InvalidArgument(std::string("malformed coefficient in system JSON: ") + e.what());
  }
}

template <class K>
std::string system_to_text(const PolySystem<K>& f, const std::vector<std::string>& names) {
  std::string out;
  for (const auto& p : f) out += p.to_string(names) + "\n";
  return out;
}

template std::string system_to_text(const PolySystem<Rational>&, const std::vector<std::string>&);
template std::string system_to_text(const PolySystem<Complex>&, const std::vector<std::string>&);

}  // namespace multdefl
