#include "cmaj/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "cmaj/error.hpp"

namespace cmaj {
namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::InvalidModel, "not a number: '" + text + "'");
  }
}

std::vector<double> parse_doubles(const std::string& args) {
  std::vector<double> out;
  if (args.empty()) return out;
  for (auto& part : split(args, ',')) out.push_back(parse_double(trim(part)));
  return out;
}

Rational parse_model_rational(const std::string& text) {
  try {
    return parse_rational(trim(text));
  } catch (const Error& e) {
    fail(ErrorCode::InvalidModel, e.what());
  }
}

double quantize(double x) { return std::nearbyint(x / kSampleGrid) * kSampleGrid; }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

IncrementModel IncrementModel::gaussian(double mean, double sd) {
  if (!std::isfinite(mean) || !(sd > 0) || !std::isfinite(sd))
    fail(ErrorCode::InvalidModel, "gaussian needs a finite mean and sd > 0");
  IncrementModel m;
  m.family_ = Family::Gaussian;
  m.params_ = {mean, sd};
  return m;
}

IncrementModel IncrementModel::cauchy(double location, double scale) {
  if (!std::isfinite(location) || !(scale > 0) || !std::isfinite(scale))
    fail(ErrorCode::InvalidModel, "cauchy needs a finite location and scale > 0");
  IncrementModel m;
  m.family_ = Family::Cauchy;
  m.params_ = {location, scale};
  return m;
}

IncrementModel IncrementModel::uniform(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
    fail(ErrorCode::InvalidModel, "uniform needs finite a < b");
  IncrementModel m;
  m.family_ = Family::Uniform;
  m.params_ = {a, b};
  return m;
}

IncrementModel IncrementModel::symmetric_stable(double alpha, double scale) {
  if (!(alpha > 0 && alpha <= 2) || !(scale > 0) || !std::isfinite(scale))
    fail(ErrorCode::InvalidModel, "stable needs alpha in (0, 2] and scale > 0");
  IncrementModel m;
  m.family_ = Family::SymmetricStable;
  m.params_ = {alpha, scale};
  return m;
}

IncrementModel IncrementModel::rademacher() {
  IncrementModel m = finite_support({{Rational(-1), Rational(1, 2)}, {Rational(1), Rational(1, 2)}});
  m.family_ = Family::Rademacher;
  return m;
}

IncrementModel IncrementModel::bernoulli(const Rational& p) {
  if (p <= 0 || p >= 1) fail(ErrorCode::InvalidModel, "bernoulli needs 0 < p < 1");
  IncrementModel m = finite_support({{Rational(-1), Rational(1 - p)}, {Rational(1), p}});
  m.family_ = Family::Bernoulli;
  return m;
}

IncrementModel IncrementModel::finite_support(std::vector<Atom> atoms) {
  if (atoms.empty()) fail(ErrorCode::InvalidModel, "finite support needs at least one atom");
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.value < b.value; });
  Rational total = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].probability <= 0) fail(ErrorCode::InvalidModel, "atom probabilities must be positive");
    if (i > 0 && atoms[i].value == atoms[i - 1].value)
      fail(ErrorCode::InvalidModel, "duplicate atom value " + to_string(atoms[i].value));
    total += atoms[i].probability;
  }
  if (total != 1) fail(ErrorCode::InvalidModel, "atom probabilities sum to " + to_string(total));

  IncrementModel m;
  m.family_ = Family::FiniteSupport;
  m.atoms_ = std::move(atoms);

  BigInt den = 1;
  for (const auto& a : m.atoms_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), a.probability.get_den_mpz_t());
  if (den < (BigInt(1) << 62)) {
    m.denominator_ = den.get_ui();
    std::uint64_t acc = 0;
    for (const auto& a : m.atoms_) {
      const BigInt share = a.probability.get_num() * (den / a.probability.get_den());
      acc += share.get_ui();
      m.cumulative_.push_back(acc);
    }
  }
  return m;
}

IncrementModel IncrementModel::empirical(std::vector<Rational> values) {
  if (values.empty()) fail(ErrorCode::InvalidModel, "empirical model needs at least one value");
  IncrementModel m;
  m.family_ = Family::Empirical;
  m.values_ = std::move(values);
  return m;
}

IncrementModel IncrementModel::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  std::string name(spec.substr(0, colon));
  std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
  const std::string args = colon == std::string_view::npos ? std::string() : std::string(spec.substr(colon + 1));

  auto numbers = [&](std::size_t lo, std::size_t hi) {
    auto v = parse_doubles(args);
    if (v.size() < lo || v.size() > hi) fail(ErrorCode::InvalidModel, "wrong parameter count for '" + name + "'");
    return v;
  };

  if (name == "gaussian" || name == "normal") {
    auto v = numbers(0, 2);
    return gaussian(v.size() > 0 ? v[0] : 0.0, v.size() > 1 ? v[1] : 1.0);
  }
  if (name == "cauchy") {
    auto v = numbers(0, 2);
    return cauchy(v.size() > 0 ? v[0] : 0.0, v.size() > 1 ? v[1] : 1.0);
  }
  if (name == "uniform") {
    auto v = numbers(0, 2);
    if (v.size() == 1) fail(ErrorCode::InvalidModel, "uniform needs both endpoints");
    return v.empty() ? uniform(-1.0, 1.0) : uniform(v[0], v[1]);
  }
  if (name == "stable") {
    auto v = numbers(1, 2);
    return symmetric_stable(v[0], v.size() > 1 ? v[1] : 1.0);
  }
  if (name == "rademacher") {
    if (!args.empty()) fail(ErrorCode::InvalidModel, "rademacher takes no parameters");
    return rademacher();
  }
  if (name == "bernoulli") return bernoulli(parse_model_rational(args));
  if (name == "finite") {
    std::vector<Atom> atoms;
    for (auto& part : split(args, ',')) {
      const auto at = part.find('@');
      if (at == std::string::npos) fail(ErrorCode::InvalidModel, "finite atoms are written value@probability");
      atoms.push_back({parse_model_rational(part.substr(0, at)), parse_model_rational(part.substr(at + 1))});
    }
    return finite_support(std::move(atoms));
  }
  if (name == "empirical") {
    std::vector<Rational> values;
    if (!args.empty())
      for (auto& part : split(args, ',')) values.push_back(parse_model_rational(part));
    return empirical(std::move(values));
  }
  fail(ErrorCode::InvalidModel, "unknown model '" + std::string(spec) + "'");
}

bool IncrementModel::continuous() const noexcept {
  switch (family_) {
    case Family::Gaussian:
    case Family::Cauchy:
    case Family::Uniform:
    case Family::SymmetricStable:
      return true;
    default:
      return false;
  }
}

bool IncrementModel::atomic() const noexcept {
  return family_ == Family::Rademacher || family_ == Family::Bernoulli || family_ == Family::FiniteSupport;
}

bool IncrementModel::symmetric() const {
  if (continuous()) return true;
  if (!atomic()) return false;
  const Rational centre = *exact_mean();
  for (std::size_t i = 0, j = atoms_.size() - 1; i <= j; ++i, --j) {
    if (atoms_[i].value - centre != centre - atoms_[j].value) return false;
    if (atoms_[i].probability != atoms_[j].probability) return false;
    if (j == 0) break;
  }
  return true;
}

const std::vector<Atom>& IncrementModel::atoms() const {
  if (!atomic()) fail(ErrorCode::InvalidModel, name() + " has no atoms");
  return atoms_;
}

const std::vector<Rational>& IncrementModel::empirical_values() const {
  if (family_ != Family::Empirical) fail(ErrorCode::InvalidModel, name() + " is not empirical");
  return values_;
}

std::optional<double> IncrementModel::mean() const {
  switch (family_) {
    case Family::Gaussian:
      return params_[0];
    case Family::Cauchy:
      return std::nullopt;
    case Family::Uniform:
      return 0.5 * (params_[0] + params_[1]);
    case Family::SymmetricStable:
      if (params_[0] > 1) return 0.0;
      return std::nullopt;
    default:
      return exact_mean()->get_d();
  }
}

std::optional<Rational> IncrementModel::exact_mean() const {
  if (atomic()) {
    Rational m = 0;
    for (const auto& a : atoms_) m += a.value * a.probability;
    return m;
  }
  if (family_ == Family::Empirical) {
    Rational m = 0;
    for (const auto& v : values_) m += v;
    return Rational(m / Rational(static_cast<long>(values_.size())));
  }
  return std::nullopt;
}

std::string IncrementModel::name() const {
  switch (family_) {
    case Family::Gaussian:
      return "gaussian:" + fmt(params_[0]) + "," + fmt(params_[1]);
    case Family::Cauchy:
      return "cauchy:" + fmt(params_[0]) + "," + fmt(params_[1]);
    case Family::Uniform:
      return "uniform:" + fmt(params_[0]) + "," + fmt(params_[1]);
    case Family::SymmetricStable:
      return "stable:" + fmt(params_[0]) + "," + fmt(params_[1]);
    case Family::Rademacher:
      return "rademacher";
    case Family::Bernoulli:
      return "bernoulli:" + to_string(atoms_[1].probability);
    case Family::FiniteSupport: {
      std::string s = "finite:";
      for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (i) s += ',';
        s += to_string(atoms_[i].value) + "@" + to_string(atoms_[i].probability);
      }
      return s;
    }
    case Family::Empirical: {
      std::string s = "empirical:";
      for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i) s += ',';
        s += to_string(values_[i]);
      }
      return s;
    }
  }
  return "unknown";
}

double draw_real(const IncrementModel& model, RngStream& rng) {
  const auto& p = model.params_;
  while (true) {
    double x = 0;
    switch (model.family_) {
      case Family::Gaussian:
        x = std::normal_distribution<double>(p[0], p[1])(rng);
        break;
      case Family::Cauchy:
        x = p[0] + p[1] * std::tan(std::numbers::pi * (rng.uniform01() - 0.5));
        break;
      case Family::Uniform:
        x = p[0] + (p[1] - p[0]) * rng.uniform01();
        break;
      case Family::SymmetricStable: {
        const double alpha = p[0];
        const double v = std::numbers::pi * (rng.uniform01() - 0.5);
        const double w = -std::log1p(-rng.uniform01());
        if (alpha == 1.0) {
          x = std::tan(v);
        } else {
          x = std::sin(alpha * v) / std::pow(std::cos(v), 1.0 / alpha) *
              std::pow(std::cos((1.0 - alpha) * v) / w, (1.0 - alpha) / alpha);
        }
        x *= p[1];
        break;
      }
      default:
        fail(ErrorCode::InvalidModel, model.name() + " is not a continuous family");
    }
    if (!std::isfinite(x) || std::fabs(x) >= kSampleCap) continue;
    return quantize(x);
  }
}

const Rational& draw_atom(const IncrementModel& model, RngStream& rng) {
  const auto& atoms = model.atoms();
  if (model.denominator_ != 0) {
    const std::uint64_t u = std::uniform_int_distribution<std::uint64_t>(0, model.denominator_ - 1)(rng);
    const auto it = std::upper_bound(model.cumulative_.begin(), model.cumulative_.end(), u);
    return atoms[static_cast<std::size_t>(it - model.cumulative_.begin())].value;
  }
  double u = rng.uniform01();
  for (std::size_t i = 0; i + 1 < atoms.size(); ++i) {
    u -= atoms[i].probability.get_d();
    if (u < 0) return atoms[i].value;
  }
  return atoms.back().value;
}

std::vector<double> sample_real(const IncrementModel& model, std::size_t n, RngStream& rng) {
  std::vector<double> out(n);
  for (auto& x : out) x = draw_real(model, rng);
  return out;
}

std::vector<Rational> sample_exact(const IncrementModel& model, std::size_t n, RngStream& rng) {
  if (model.family() == Family::Empirical) {
    const auto& values = model.empirical_values();
    if (values.size() != n)
      fail(ErrorCode::InvalidModel, "empirical model holds " + std::to_string(values.size()) +
                                        " values but " + std::to_string(n) + " were requested");
    std::vector<Rational> out = values;
    for (std::size_t i = n; i > 1; --i) std::swap(out[i - 1], out[rng.uniform_index(i)]);
    return out;
  }
  if (!model.atomic()) fail(ErrorCode::InvalidModel, model.name() + " has no exact representation");
  std::vector<Rational> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(draw_atom(model, rng));
  return out;
}

std::vector<Numeric> sample_increments(const IncrementModel& model, std::size_t n, RngStream& rng) {
  std::vector<Numeric> out;
  out.reserve(n);
  if (model.continuous()) {
    for (double x : sample_real(model, n, rng)) out.emplace_back(x);
  } else {
    for (auto& x : sample_exact(model, n, rng)) out.emplace_back(std::move(x));
  }
  return out;
}

std::size_t sample_geometric_length(double q, RngStream& rng) {
  if (!(q > 0 && q < 1)) fail(ErrorCode::InvalidParameter, "q must lie in (0, 1)");
  return std::geometric_distribution<std::size_t>(1.0 - q)(rng);
}

double standard_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

std::optional<double> sum_cdf(const IncrementModel& model, int j, double x) {
  if (j < 1) return std::nullopt;
  const double jj = j;
  switch (model.family()) {
    case Family::Gaussian:
      return standard_normal_cdf((x - jj * model.param(0)) / (model.param(1) * std::sqrt(jj)));
    case Family::Cauchy:
      return 0.5 + std::atan((x - jj * model.param(0)) / (jj * model.param(1))) / std::numbers::pi;
    case Family::Uniform: {
      if (j > 30) return std::nullopt;
      const double y = (x - jj * model.param(0)) / (model.param(1) - model.param(0));
      if (y <= 0) return 0.0;
      if (y >= jj) return 1.0;
      // Irwin-Hall distribution function.
      double total = 0, binom = 1;
      for (int k = 0; k <= static_cast<int>(std::floor(y)); ++k) {
        total += (k % 2 ? -1.0 : 1.0) * binom * std::pow(y - k, jj);
        binom = binom * (jj - k) / (k + 1);
      }
      return std::clamp(total / std::tgamma(jj + 1), 0.0, 1.0);
    }
    default:
      return std::nullopt;
  }
}

}  // namespace cmaj
