#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>
#include <utility>

#include "dias/constants.hpp"
#include "dias/cover.hpp"
#include "dias/errors.hpp"
#include "dias/quadrature.hpp"

namespace dias {

namespace {

// Input modes are limited so that deck-rotated modes stay within kMaxIndex.
constexpr int kMaxInputIndex = 32;
constexpr int kMaxIndex = 2 * kMaxInputIndex;

// Dual-lattice indices of the mode obtained by precomposing with R.
std::pair<int, int> rotate_mode(int m, int n) { return {-m + n, -m}; }

struct Complex {
  double re;
  double im;
};

constexpr Complex mul(const Complex& a, const Complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

void check_term(const FourierTerm& t) {
  if (std::abs(t.m) > kMaxInputIndex || std::abs(t.n) > kMaxInputIndex) {
    throw InvalidInput("mode index exceeds 32 in absolute value");
  }
  if (!std::isfinite(t.amplitude) || !std::isfinite(t.phase)) {
    throw InvalidInput("mode amplitude and phase must be finite");
  }
}

}  // namespace

ConformalFactorField ConformalFactorField::constant(double c) {
  if (!std::isfinite(c)) throw InvalidInput("constant field value must be finite");
  ConformalFactorField u;
  u.constant_ = c;
  u.compile();
  return u;
}

ConformalFactorField ConformalFactorField::fourier_sum(std::vector<FourierTerm> terms) {
  for (const auto& t : terms) check_term(t);
  ConformalFactorField u;
  u.terms_ = std::move(terms);
  u.compile();
  return u;
}

ConformalFactorField ConformalFactorField::operator+(const ConformalFactorField& other) const {
  // Mixed sums expand the symmetrized operand into its three rotated copies.
  auto expanded = [](const ConformalFactorField& f) {
    if (!f.symmetrized_) return f.terms_;
    std::vector<FourierTerm> out;
    out.reserve(3 * f.terms_.size());
    for (const auto& t : f.terms_) {
      auto [m, n] = std::pair{t.m, t.n};
      for (int j = 0; j < 3; ++j) {
        out.push_back({m, n, t.amplitude / 3.0, t.phase});
        std::tie(m, n) = rotate_mode(m, n);
      }
    }
    return out;
  };
  ConformalFactorField sum;
  sum.constant_ = constant_ + other.constant_;
  if (symmetrized_ == other.symmetrized_) {
    sum.terms_ = terms_;
    sum.terms_.insert(sum.terms_.end(), other.terms_.begin(), other.terms_.end());
    sum.symmetrized_ = symmetrized_;
  } else {
    sum.terms_ = expanded(*this);
    const auto rest = expanded(other);
    sum.terms_.insert(sum.terms_.end(), rest.begin(), rest.end());
  }
  sum.compile();
  return sum;
}

ConformalFactorField ConformalFactorField::scaled(double factor) const {
  if (!std::isfinite(factor)) throw InvalidInput("scale factor must be finite");
  ConformalFactorField out = *this;
  out.constant_ *= factor;
  for (auto& t : out.terms_) t.amplitude *= factor;
  out.compile();
  return out;
}

void ConformalFactorField::compile() {
  std::map<std::pair<int, int>, Complex> acc;
  const double share = symmetrized_ ? 1.0 / 3.0 : 1.0;
  for (const auto& t : terms_) {
    const Complex c{t.amplitude * std::cos(t.phase) * share, t.amplitude * std::sin(t.phase) * share};
    auto mode = std::pair{t.m, t.n};
    for (int j = 0; j < (symmetrized_ ? 3 : 1); ++j) {
      auto& slot = acc[mode];
      slot.re += c.re;
      slot.im += c.im;
      mode = rotate_mode(mode.first, mode.second);
    }
  }
  offset_ = constant_;
  table_.clear();
  max_m_ = 0;
  max_n_ = 0;
  for (const auto& [mode, c] : acc) {
    if (mode.first == 0 && mode.second == 0) {
      offset_ += c.re;
      continue;
    }
    if (std::hypot(c.re, c.im) <= 1e-15) continue;
    table_.push_back({mode.first, mode.second, c.re, c.im});
    max_m_ = std::max(max_m_, std::abs(mode.first));
    max_n_ = std::max(max_n_, std::abs(mode.second));
  }
}

FieldValue ConformalFactorField::eval(const PlanePoint& q) const {
  FieldValue out{offset_, {0.0, 0.0}};
  if (table_.empty()) return out;
  PlanePoint theta = lattice_coordinates(q);
  theta.x -= std::floor(theta.x);
  theta.y -= std::floor(theta.y);

  // Powers z^k for k in [-kMaxIndex, kMaxIndex], stored at offset kMaxIndex.
  std::array<Complex, 2 * kMaxIndex + 1> p1;
  std::array<Complex, 2 * kMaxIndex + 1> p2;
  auto fill = [](std::array<Complex, 2 * kMaxIndex + 1>& p, double angle, int upto) {
    const Complex z{std::cos(2.0 * kPi * angle), std::sin(2.0 * kPi * angle)};
    p[kMaxIndex] = {1.0, 0.0};
    for (int k = 1; k <= upto; ++k) {
      p[kMaxIndex + k] = mul(p[kMaxIndex + k - 1], z);
      p[kMaxIndex - k] = {p[kMaxIndex + k].re, -p[kMaxIndex + k].im};
    }
  };
  fill(p1, theta.x, max_m_);
  fill(p2, theta.y, max_n_);

  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  for (const auto& c : table_) {
    const Complex z = mul(p1[kMaxIndex + c.m], p2[kMaxIndex + c.n]);
    const Complex w = mul({c.re, c.im}, z);
    value += w.re;
    d1 += c.m * w.im;
    d2 += c.n * w.im;
  }
  // d/dtheta Re(C e^{2 pi i (m theta1 + n theta2)}) = -2 pi m Im(...)
  const double dt1 = -2.0 * kPi * d1;
  const double dt2 = -2.0 * kPi * d2;
  out.value += value;
  // theta1 = <k1, q>, theta2 = <k2, q>.
  out.gradient = {dt1, (-dt1 + 2.0 * dt2) / kSqrt3};
  return out;
}

double ConformalFactorField::value(const PlanePoint& q) const { return eval(q).value; }

ConformalFactorField symmetrize(const ConformalFactorField& raw) {
  if (raw.symmetrized_) return raw;
  ConformalFactorField out = raw;
  out.symmetrized_ = true;
  out.compile();
  return out;
}

FieldValue eval_field(const ConformalFactorField& u, const TorusPoint& q) { return u.eval(q.p); }

namespace {

void require_grid(int n, int minimum, const char* what) {
  if (n < minimum) {
    throw ResolutionError(std::string(what) + ": grid size must be at least " +
                          std::to_string(minimum));
  }
}

// Applies `f` at every node of the n x n rectangle grid and returns the
// compensated mean, accumulated row by row in a fixed order.
template <typename F>
double grid_mean(const ConformalFactorField& u, int n, F&& f) {
  std::vector<double> rows(n);
  for (int j = 0; j < n; ++j) {
    CompensatedSum acc;
    const double y = kHexHeight * j / n;
    for (int i = 0; i < n; ++i) acc.add(f(u.eval({static_cast<double>(i) / n, y})));
    rows[j] = acc.value();
  }
  return deterministic_sum(rows) / (static_cast<double>(n) * n);
}

template <typename F>
double grid_max(const ConformalFactorField& u, int n, F&& f) {
  double best = 0.0;
  for (int j = 0; j < n; ++j) {
    const double y = kHexHeight * j / n;
    for (int i = 0; i < n; ++i) best = std::max(best, f(u.eval({static_cast<double>(i) / n, y})));
  }
  return best;
}

}  // namespace

double sphere_area(const ConformalFactorField& u, int n) {
  require_grid(n, 8, "sphere_area");
  const double mean = grid_mean(u, n, [](const FieldValue& v) { return std::exp(2.0 * v.value); });
  return kHexHeight * mean / 3.0;
}

double sup_deviation(const ConformalFactorField& u, int n) {
  require_grid(n, 32, "sup_deviation");
  return grid_max(u, n, [](const FieldValue& v) { return std::abs(std::expm1(v.value)); });
}

double sup_slope(const ConformalFactorField& u, int n) {
  require_grid(n, 32, "sup_slope");
  return grid_max(u, n,
                  [](const FieldValue& v) { return std::abs(std::exp(v.value) * v.gradient.y); });
}

FieldMoments field_moments(const ConformalFactorField& u, int n) {
  require_grid(n, 8, "field_moments");
  const double mean = grid_mean(u, n, [](const FieldValue& v) { return v.value; });
  const double var = grid_mean(u, n, [mean](const FieldValue& v) {
    const double d = v.value - mean;
    return d * d;
  });
  return {mean, var};
}

// --- text format -----------------------------------------------------------

namespace {

double parse_real(const std::string& token, int line) {
  double v = 0.0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw InvalidInput("line " + std::to_string(line) + ": expected a real number, got '" + token +
                       "'");
  }
  return v;
}

int parse_int(const std::string& token, int line) {
  int v = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw InvalidInput("line " + std::to_string(line) + ": expected an integer, got '" + token +
                       "'");
  }
  return v;
}

std::string shortest(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace

ConformalFactorField parse_field(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw_line;
  double constant = 0.0;
  std::vector<FourierTerm> terms;
  int line = 0;
  while (std::getline(in, raw_line)) {
    ++line;
    if (auto hash = raw_line.find('#'); hash != std::string::npos) raw_line.resize(hash);
    std::istringstream words(raw_line);
    std::vector<std::string> tok;
    for (std::string w; words >> w;) tok.push_back(w);
    if (tok.empty()) continue;
    if (tok[0] == "const") {
      if (tok.size() != 2) throw InvalidInput("line " + std::to_string(line) + ": const <c>");
      constant += parse_real(tok[1], line);
    } else if (tok[0] == "mode") {
      if (tok.size() != 5) {
        throw InvalidInput("line " + std::to_string(line) + ": mode <m> <n> <amplitude> <phase>");
      }
      FourierTerm t{parse_int(tok[1], line), parse_int(tok[2], line), parse_real(tok[3], line),
                    parse_real(tok[4], line)};
      try {
        check_term(t);
      } catch (const InvalidInput& e) {
        throw InvalidInput("line " + std::to_string(line) + ": " + e.what());
      }
      terms.push_back(t);
    } else {
      throw InvalidInput("line " + std::to_string(line) + ": unknown directive '" + tok[0] + "'");
    }
  }
  return symmetrize(ConformalFactorField::constant(constant) +
                    ConformalFactorField::fourier_sum(std::move(terms)));
}

ConformalFactorField load_field(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open field file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_field(buf.str());
}

std::string format_field(const ConformalFactorField& u) {
  std::string out = "const " + shortest(u.constant_term()) + "\n";
  for (const auto& t : u.terms()) {
    out += "mode " + std::to_string(t.m) + " " + std::to_string(t.n) + " " + shortest(t.amplitude) +
           " " + shortest(t.phase) + "\n";
  }
  return out;
}

std::string field_digest(const ConformalFactorField& u) {
  const std::string text = format_field(u) + (u.symmetrized() ? "symmetrized\n" : "raw\n");
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_Digest(text.data(), text.size(), md.data(), &len, EVP_sha256(), nullptr);
  static constexpr char kHexDigits[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHexDigits[md[i] >> 4]);
    hex.push_back(kHexDigits[md[i] & 0xf]);
  }
  return hex;
}

}  // namespace dias
