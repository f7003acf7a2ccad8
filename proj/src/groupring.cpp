#include "vansum/groupring.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include <nlohmann/json.hpp>

namespace vansum {

namespace {

int reduce_exponent(std::int64_t k, int m) {
  std::int64_t r = k % m;
  if (r < 0) r += m;
  return static_cast<int>(r);
}

void require_same_modulus(const GroupRingElement& x, const GroupRingElement& y) {
  if (x.modulus() != y.modulus()) throw ModulusMismatch(x.modulus(), y.modulus());
}

}  // namespace

ModulusMismatch::ModulusMismatch(int a, int b)
    : std::invalid_argument("modulus mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}

std::int64_t Factorization::radical() const {
  std::int64_t r = 1;
  for (auto p : primes) r *= p;
  return r;
}

Factorization factorize(std::int64_t m) {
  if (m < 1) throw std::invalid_argument("factorize: modulus must be positive, got " + std::to_string(m));
  Factorization f;
  f.m = m;
  std::int64_t n = m;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int a = 0;
    while (n % p == 0) {
      n /= p;
      ++a;
    }
    f.primes.push_back(p);
    f.exponents.push_back(a);
  }
  if (n > 1) {
    f.primes.push_back(n);
    f.exponents.push_back(1);
  }
  return f;
}

GroupRingElement::GroupRingElement(int modulus) {
  if (modulus < 1) throw std::invalid_argument("group ring modulus must be positive, got " + std::to_string(modulus));
  coeffs_.assign(static_cast<std::size_t>(modulus), 0);
}

GroupRingElement::GroupRingElement(int modulus, std::vector<Coeff> coeffs) : coeffs_(std::move(coeffs)) {
  if (modulus < 1) throw std::invalid_argument("group ring modulus must be positive, got " + std::to_string(modulus));
  if (coeffs_.size() != static_cast<std::size_t>(modulus))
    throw std::invalid_argument("coefficient count " + std::to_string(coeffs_.size()) + " does not match modulus " +
                                std::to_string(modulus));
}

GroupRingElement GroupRingElement::monomial(int modulus, std::int64_t exponent, Coeff c) {
  GroupRingElement x(modulus);
  x.coeffs_[static_cast<std::size_t>(reduce_exponent(exponent, modulus))] = c;
  return x;
}

bool GroupRingElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](Coeff c) { return c == 0; });
}

std::vector<int> GroupRingElement::support() const {
  std::vector<int> s;
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    if (coeffs_[k] != 0) s.push_back(static_cast<int>(k));
  return s;
}

GroupRingElement add(const GroupRingElement& x, const GroupRingElement& y) {
  require_same_modulus(x, y);
  std::vector<Coeff> c(x.coeffs().size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = checked_add(x[k], y[k]);
  return {x.modulus(), std::move(c)};
}

GroupRingElement sub(const GroupRingElement& x, const GroupRingElement& y) {
  require_same_modulus(x, y);
  std::vector<Coeff> c(x.coeffs().size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = checked_sub(x[k], y[k]);
  return {x.modulus(), std::move(c)};
}

GroupRingElement neg(const GroupRingElement& x) { return scale(x, -1); }

GroupRingElement scale(const GroupRingElement& x, Coeff s) {
  std::vector<Coeff> c(x.coeffs().size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = checked_mul(x[k], s);
  return {x.modulus(), std::move(c)};
}

GroupRingElement mul(const GroupRingElement& x, const GroupRingElement& y) {
  require_same_modulus(x, y);
  const std::size_t m = x.coeffs().size();
  std::vector<Coeff> c(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < m; ++j) {
      if (y[j] == 0) continue;
      std::size_t k = i + j;
      if (k >= m) k -= m;
      c[k] = checked_add(c[k], checked_mul(x[i], y[j]));
    }
  }
  return {x.modulus(), std::move(c)};
}

Coeff augmentation(const GroupRingElement& x) {
  Coeff s = 0;
  for (Coeff c : x.coeffs()) s = checked_add(s, c);
  return s;
}

int support_size(const GroupRingElement& x) {
  return static_cast<int>(std::count_if(x.coeffs().begin(), x.coeffs().end(), [](Coeff c) { return c != 0; }));
}

GroupRingElement rotate(const GroupRingElement& x, std::int64_t k) {
  const int m = x.modulus();
  const int s = reduce_exponent(k, m);
  std::vector<Coeff> c(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) c[static_cast<std::size_t>((i + s) % m)] = x[static_cast<std::size_t>(i)];
  return {m, std::move(c)};
}

GroupRingElement sigma_subgroup(int m, int d) {
  if (m < 1 || d < 1 || m % d != 0)
    throw std::invalid_argument("sigma_subgroup: order " + std::to_string(d) + " does not divide " + std::to_string(m));
  std::vector<Coeff> c(static_cast<std::size_t>(m), 0);
  const int step = m / d;
  for (int k = 0; k < d; ++k) c[static_cast<std::size_t>(k * step)] = 1;
  return {m, std::move(c)};
}

bool geq(const GroupRingElement& y, const GroupRingElement& x) {
  require_same_modulus(x, y);
  for (std::size_t k = 0; k < x.coeffs().size(); ++k)
    if (y[k] < x[k]) return false;
  return true;
}

bool is_nonnegative(const GroupRingElement& x) {
  return std::all_of(x.coeffs().begin(), x.coeffs().end(), [](Coeff c) { return c >= 0; });
}

int canonical_shift(std::span<const Coeff> c) {
  const std::size_t m = c.size();
  if (m == 0) return 0;
  const Coeff top = *std::max_element(c.begin(), c.end());
  // rotate(x, s)[k] = x[(k - s) mod m]; the canon starts with the largest
  // coefficient, so only shifts moving a maximal entry to index 0 compete.
  int best = -1;
  std::size_t best_start = 0;
  for (std::size_t start = 0; start < m; ++start) {
    if (c[start] != top) continue;
    if (best < 0) {
      best = static_cast<int>((m - start) % m);
      best_start = start;
      continue;
    }
    int cmp = 0;
    for (std::size_t k = 0; k < m && cmp == 0; ++k) {
      Coeff a = c[(start + k) % m];
      Coeff b = c[(best_start + k) % m];
      if (a != b) cmp = a > b ? 1 : -1;
    }
    const int shift = static_cast<int>((m - start) % m);
    if (cmp > 0 || (cmp == 0 && shift < best)) {
      best = shift;
      best_start = start;
    }
  }
  return best;
}

CanonicalRotation canonical_rotation(const GroupRingElement& x) {
  const int shift = canonical_shift(x.coeffs());
  return {shift, rotate(x, shift)};
}

bool lex_less(const GroupRingElement& a, const GroupRingElement& b) {
  require_same_modulus(a, b);
  return a.coeffs() < b.coeffs();
}

// ---------------------------------------------------------------------------

ParseError::ParseError(const std::string& message, std::string token)
    : std::invalid_argument(message + " '" + token + "'"), token_(std::move(token)) {}

namespace {

class ElementParser {
 public:
  ElementParser(std::string_view text, int m) : text_(text), m_(m), coeffs_(static_cast<std::size_t>(m), 0) {}

  GroupRingElement parse() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("empty element", "");
    if (text_.substr(pos_) == "0" || trimmed_rest() == "0") return GroupRingElement(m_);
    Coeff sign = 1;
    if (peek() == '-') {
      ++pos_;
      sign = -1;
    }
    term(sign);
    for (;;) {
      skip_space();
      if (pos_ == text_.size()) break;
      char op = peek();
      if (op != '+' && op != '-') throw ParseError("expected '+' or '-' at", token_at(pos_));
      ++pos_;
      term(op == '+' ? 1 : -1);
    }
    return {m_, std::move(coeffs_)};
  }

 private:
  std::string_view trimmed_rest() const {
    auto s = text_.substr(pos_);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string token_at(std::size_t p) const {
    std::size_t e = p;
    while (e < text_.size() && !std::isspace(static_cast<unsigned char>(text_[e])) && (e == p || (text_[e] != '+' && text_[e] != '-')))
      ++e;
    if (e == p && p < text_.size()) ++e;
    return std::string(text_.substr(p, e - p));
  }

  std::int64_t integer(const char* what) {
    skip_space();
    const std::size_t start = pos_;
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
    if (ec == std::errc::result_out_of_range) throw ParseError(std::string(what) + " out of range", token_at(start));
    if (ec != std::errc() || ptr == text_.data() + pos_) throw ParseError(std::string("expected ") + what + " at", token_at(start));
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return v;
  }

  void term(Coeff sign) {
    skip_space();
    const std::size_t start = pos_;
    Coeff c = 1;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      c = integer("coefficient");
      if (c < 1) throw ParseError("coefficient must be >= 1 in term", token_at(start));
      skip_space();
      if (peek() != '*') throw ParseError("expected '*' after coefficient in term", token_at(start));
      ++pos_;
      skip_space();
    }
    if (peek() != 'z') throw ParseError("expected 'z^k' term at", token_at(pos_));
    ++pos_;
    skip_space();
    if (peek() != '^') throw ParseError("expected '^' after 'z' in term", token_at(start));
    ++pos_;
    const std::size_t kpos = pos_;
    std::int64_t k = integer("exponent");
    if (k < 0 || k >= m_) throw ParseError("exponent out of range [0, " + std::to_string(m_) + ") in term", token_at(kpos));
    auto& slot = coeffs_[static_cast<std::size_t>(k)];
    slot = checked_add(slot, checked_mul(sign, c));
  }

  std::string_view text_;
  int m_;
  std::size_t pos_ = 0;
  std::vector<Coeff> coeffs_;
};

}  // namespace

GroupRingElement parse_element(std::string_view text, int modulus) {
  if (modulus < 1) throw std::invalid_argument("modulus must be positive");
  return ElementParser(text, modulus).parse();
}

std::string to_string(const GroupRingElement& x) {
  std::string out;
  for (std::size_t k = 0; k < x.coeffs().size(); ++k) {
    const Coeff c = x[k];
    if (c == 0) continue;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    const std::uint64_t mag = c < 0 ? 0 - static_cast<std::uint64_t>(c) : static_cast<std::uint64_t>(c);
    if (mag != 1) out += std::to_string(mag) + "*";
    out += "z^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

nlohmann::json to_json(const GroupRingElement& x) {
  nlohmann::json coeffs = nlohmann::json::object();
  for (std::size_t k = 0; k < x.coeffs().size(); ++k)
    if (x[k] != 0) coeffs[std::to_string(k)] = x[k];
  return {{"m", x.modulus()}, {"coeffs", coeffs}};
}

GroupRingElement element_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("m") || !j.at("m").is_number_integer())
    throw ParseError("element JSON needs an integer field", "m");
  const auto m = j.at("m").get<std::int64_t>();
  if (m < 1 || m > (1 << 24)) throw ParseError("modulus out of range", std::to_string(m));
  std::vector<Coeff> c(static_cast<std::size_t>(m), 0);
  if (j.contains("coeffs")) {
    const auto& cj = j.at("coeffs");
    if (!cj.is_object()) throw ParseError("element JSON field must be an object", "coeffs");
    for (const auto& [key, value] : cj.items()) {
      std::int64_t k = 0;
      auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), k);
      if (ec != std::errc() || ptr != key.data() + key.size() || k < 0 || k >= m)
        throw ParseError("bad exponent key", key);
      if (!value.is_number_integer()) throw ParseError("coefficient must be an integer for key", key);
      c[static_cast<std::size_t>(k)] = value.get<Coeff>();
    }
  }
  return {static_cast<int>(m), std::move(c)};
}

}  // namespace vansum
