#include "renyi/state_catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "renyi/io.hpp"

namespace renyi {

namespace {

constexpr double kProbTol = 1e-12;
template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_probabilities(const std::vector<double>& p, const char* what) {
  if (p.empty()) throw InvariantError(std::string(what) + ": empty probability vector");
  double s = 0.0;
  for (double x : p) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw InvariantError(std::string(what) + ": negative or non-finite weight");
    s += x;
  }
  if (std::abs(s - 1.0) > kProbTol) throw InvariantError(std::string(what) + ": weights do not sum to 1");
}

double binary_deficit(double q, double alpha) { return 1.0 - alpha_entropy({q, 1.0 - q}, alpha); }

// Vector (F, (1-F)/(d-1), ..., (1-F)/(d-1)); its Renyi entropy equals
// H_alpha(((1-F)/(d-1)^{(alpha-1)/alpha}, F)) for every alpha, including the limit alpha -> 1.
std::vector<double> isotropic_spectrum_vector(double F, int d) {
  std::vector<double> v(d, (1.0 - F) / (d - 1));
  v[0] = F;
  return v;
}

double multinomial(int N, const std::vector<int>& k) {
  double lc = std::lgamma(N + 1.0);
  for (int kj : k) lc -= std::lgamma(kj + 1.0);
  return std::exp(lc);
}

// C_{N,k} prod (k_j/N)^{k_j}: the largest product overlap of the Dicke state.
double dicke_overlap(const Dicke& f) {
  double lp = std::log(multinomial(f.N, f.k));
  for (int kj : f.k)
    if (kj > 0) lp += kj * std::log(static_cast<double>(kj) / f.N);
  return std::exp(lp);
}

// Occupation counts of the base-d digits of x over N sites.
std::vector<int> type_of(int x, int N, int d) {
  std::vector<int> t(d, 0);
  for (int s = 0; s < N; ++s) {
    t[x % d]++;
    x /= d;
  }
  return t;
}

int ipow(int b, int e) {
  int r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

double pure_beta(const AlphaZ& p) {
  const double den = p.z() - 1.0 + p.alpha();
  if (den <= 1e-12) return std::numeric_limits<double>::infinity();
  return p.z() / den;
}

DensityMatrix mc_state(const Matrix& c) {
  const int d = static_cast<int>(c.rows());
  Matrix m = Matrix::Zero(d * d, d * d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) m(j * d + j, k * d + k) = c(j, k);
  return DensityMatrix(HermitianOperator(m, Partition({d, d})));
}

HermitianOperator diagonal_ll(const std::vector<double>& w) {
  const int d = static_cast<int>(w.size());
  std::vector<double> diag(d * d, 0.0);
  for (int l = 0; l < d; ++l) diag[l * d + l] = w[l];
  return HermitianOperator::diagonal(diag, Partition({d, d}));
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, '|')) {
    std::size_t pos = 0;
    const double v = std::stod(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("bad number '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

double parse_number(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad number '" + s + "'");
  return v;
}

int parse_int(const std::string& s) {
  std::size_t pos = 0;
  const int v = std::stoi(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad integer '" + s + "'");
  return v;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += '|';
    if constexpr (std::is_floating_point_v<T>)
      out += num(v[i]);
    else
      out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace

double alpha_entropy(const std::vector<double>& p, double alpha) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha_entropy: order must be >= 0");
  double pmax = 0.0;
  for (double x : p) pmax = std::max(pmax, x);
  if (!(pmax > 0.0)) throw std::invalid_argument("alpha_entropy: zero vector");
  if (std::isinf(alpha)) return -std::log2(pmax);
  if (alpha == 0.0) {
    const auto n = std::count_if(p.begin(), p.end(), [](double x) { return x > 0.0; });
    return std::log2(static_cast<double>(n));
  }
  if (std::abs(alpha - 1.0) < 1e-12) {
    double h = 0.0;
    for (double x : p)
      if (x > 0.0) h -= x * std::log2(x);
    return h;
  }
  double s = 0.0;
  for (double x : p)
    if (x > 0.0) s += std::pow(x / pmax, alpha);
  return (alpha * std::log2(pmax) + std::log2(s)) / (1.0 - alpha);
}

Matrix bell_basis() {
  const double r = 1.0 / std::sqrt(2.0);
  Matrix b = Matrix::Zero(4, 4);
  b(0, 0) = r, b(3, 0) = r;    // Phi+
  b(0, 1) = r, b(3, 1) = -r;   // Phi-
  b(1, 2) = r, b(2, 2) = r;    // Psi+
  b(1, 3) = r, b(2, 3) = -r;   // Psi-
  return b;
}

HermitianOperator symmetric_projector(int d) {
  Matrix m = Matrix::Identity(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i * d + j, j * d + i) += 1.0;
  return {0.5 * m, Partition({d, d})};
}

HermitianOperator antisymmetric_projector(int d) {
  return HermitianOperator::identity(Partition({d, d})) - symmetric_projector(d);
}

DensityMatrix werner_state(double p, int d) {
  if (d < 2) throw InvariantError("werner: d must be >= 2");
  if (!(p >= 0.0 && p <= 1.0)) throw InvariantError("werner: p must lie in [0, 1]");
  const double ns = d * (d + 1) / 2.0, na = d * (d - 1) / 2.0;
  return DensityMatrix(symmetric_projector(d) * (p / ns) + antisymmetric_projector(d) * ((1.0 - p) / na));
}

DensityMatrix isotropic_state(double F, int d) {
  if (d < 2) throw InvariantError("isotropic: d must be >= 2");
  if (!(F >= 0.0 && F <= 1.0)) throw InvariantError("isotropic: F must lie in [0, 1]");
  Vector phi = Vector::Zero(d * d);
  for (int i = 0; i < d; ++i) phi(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  const Partition part({d, d});
  const auto proj = HermitianOperator::projector(phi, part);
  return DensityMatrix(proj * F + (HermitianOperator::identity(part) - proj) * ((1.0 - F) / (d * d - 1.0)));
}

void validate(const StateFamily& family) {
  std::visit(Overloaded{
                 [](const BellDiagonal& f) { check_probabilities({f.lambda.begin(), f.lambda.end()}, "bell"); },
                 [](const Werner& f) {
                   if (f.d < 2) throw InvariantError("werner: d must be >= 2");
                   if (!(f.p >= 0.0 && f.p <= 1.0)) throw InvariantError("werner: p must lie in [0, 1]");
                 },
                 [](const Isotropic& f) {
                   if (f.d < 2) throw InvariantError("isotropic: d must be >= 2");
                   if (!(f.F >= 0.0 && f.F <= 1.0)) throw InvariantError("isotropic: F must lie in [0, 1]");
                 },
                 [](const Dicke& f) {
                   if (f.N < 1) throw InvariantError("dicke: N must be >= 1");
                   if (f.k.size() < 2) throw InvariantError("dicke: need at least two levels");
                   if (std::any_of(f.k.begin(), f.k.end(), [](int x) { return x < 0; }))
                     throw InvariantError("dicke: negative occupation");
                   if (std::accumulate(f.k.begin(), f.k.end(), 0) != f.N)
                     throw InvariantError("dicke: occupations must sum to N");
                 },
                 [](const MCBD& f) {
                   if (f.p.size() < 2) throw InvariantError("mcbd: d must be >= 2");
                   check_probabilities(f.p, "mcbd");
                 },
                 [](const PureBipartite& f) { check_probabilities(f.p, "pure"); },
                 [](const GHZ& f) {
                   if (f.d < 2 || f.M < 2) throw InvariantError("ghz: need d >= 2 and M >= 2");
                 },
                 [](const MaximallyCorrelated& f) {
                   if (f.coeff.rows() != f.coeff.cols() || f.coeff.rows() < 1)
                     throw InvariantError("mc: coefficient matrix must be square");
                   DensityMatrix check{HermitianOperator(f.coeff)};
                   (void)check;
                 },
                 [](const AntisymPair& f) {
                   if (f.d < 2) throw InvariantError("antisym: d must be >= 2");
                 },
             },
             family);
}

double dense_dimension(const StateFamily& family) {
  return std::visit(Overloaded{
                        [](const BellDiagonal&) { return 4.0; },
                        [](const Werner& f) { return std::pow(f.d, 2.0); },
                        [](const Isotropic& f) { return std::pow(f.d, 2.0); },
                        [](const Dicke& f) { return std::pow(static_cast<double>(f.k.size()), f.N); },
                        [](const MCBD& f) { return std::pow(static_cast<double>(f.p.size()), 2.0); },
                        [](const PureBipartite& f) { return std::pow(static_cast<double>(f.p.size()), 2.0); },
                        [](const GHZ& f) { return std::pow(f.d, static_cast<double>(f.M)); },
                        [](const MaximallyCorrelated& f) { return std::pow(static_cast<double>(f.coeff.rows()), 2.0); },
                        [](const AntisymPair& f) { return std::pow(f.d, 4.0); },
                    },
                    family);
}

DensityMatrix build(const StateFamily& family) {
  validate(family);
  if (dense_dimension(family) > kMaxDenseDim)
    throw std::invalid_argument(to_string(family) + ": total dimension exceeds the dense limit of " +
                                std::to_string(static_cast<int>(kMaxDenseDim)));
  return std::visit(
      Overloaded{
          [](const BellDiagonal& f) {
            const Matrix b = bell_basis();
            Matrix m = Matrix::Zero(4, 4);
            for (int j = 0; j < 4; ++j) m += f.lambda[j] * b.col(j) * b.col(j).adjoint();
            return DensityMatrix(HermitianOperator(m, Partition({2, 2})));
          },
          [](const Werner& f) { return werner_state(f.p, f.d); },
          [](const Isotropic& f) { return isotropic_state(f.F, f.d); },
          [](const Dicke& f) {
            const int d = static_cast<int>(f.k.size());
            const int D = ipow(d, f.N);
            Vector psi = Vector::Zero(D);
            for (int x = 0; x < D; ++x)
              if (type_of(x, f.N, d) == f.k) psi(x) = 1.0;
            psi.normalize();
            return DensityMatrix(HermitianOperator::projector(psi, Partition(std::vector<int>(f.N, d))));
          },
          [](const MCBD& f) {
            const int d = static_cast<int>(f.p.size());
            Matrix m = Matrix::Zero(d * d, d * d);
            for (int k = 0; k < d; ++k) {
              Vector psi = Vector::Zero(d * d);
              for (int j = 0; j < d; ++j)
                psi(j * d + j) = std::polar(1.0 / std::sqrt(static_cast<double>(d)), 2.0 * std::numbers::pi * k * j / d);
              m += f.p[k] * psi * psi.adjoint();
            }
            return DensityMatrix(HermitianOperator(m, Partition({d, d})));
          },
          [](const PureBipartite& f) {
            const int d = static_cast<int>(f.p.size());
            Vector psi = Vector::Zero(d * d);
            for (int i = 0; i < d; ++i) psi(i * d + i) = std::sqrt(f.p[i]);
            return DensityMatrix(HermitianOperator::projector(psi, Partition({d, d})));
          },
          [](const GHZ& f) {
            const int D = ipow(f.d, f.M);
            Vector psi = Vector::Zero(D);
            const int step = (D - 1) / (f.d - 1);  // index of |i..i> is i * (1 + d + .. + d^{M-1})
            for (int i = 0; i < f.d; ++i) psi(i * step) = 1.0 / std::sqrt(static_cast<double>(f.d));
            return DensityMatrix(HermitianOperator::projector(psi, Partition(std::vector<int>(f.M, f.d))));
          },
          [](const MaximallyCorrelated& f) { return mc_state(f.coeff); },
          [](const AntisymPair& f) {
            const auto r = werner_state(0.0, f.d);
            return DensityMatrix(tensor_product_regrouped(r, r));
          },
      },
      family);
}

ExtendedReal closed_form_value(const StateFamily& family, const AlphaZ& p) {
  validate(family);
  const double a = p.alpha();
  double v = std::visit(
      Overloaded{
          [&](const BellDiagonal& f) {
            const double lmax = *std::max_element(f.lambda.begin(), f.lambda.end());
            return lmax >= 0.5 ? binary_deficit(lmax, a) : 0.0;
          },
          [&](const Werner& f) { return f.p <= 0.5 ? binary_deficit(f.p, a) : 0.0; },
          [&](const Isotropic& f) {
            if (f.F <= 1.0 / f.d) return 0.0;
            return std::log2(static_cast<double>(f.d)) - alpha_entropy(isotropic_spectrum_vector(f.F, f.d), a);
          },
          [&](const Dicke& f) { return -std::log2(dicke_overlap(f)); },
          [&](const MCBD& f) {
            return std::log2(static_cast<double>(f.p.size())) - alpha_entropy(f.p, a);
          },
          [&](const PureBipartite& f) { return alpha_entropy(f.p, pure_beta(p)); },
          [&](const GHZ& f) { return std::log2(static_cast<double>(f.d)); },
          [&](const MaximallyCorrelated&) -> double {
            throw std::invalid_argument("closed_form_value: no closed form for a general maximally correlated state");
          },
          [&](const AntisymPair& f) { return 1.0 - std::log2((f.d - 1.0) / f.d); },
      },
      family);
  if (std::abs(v) < 1e-15) v = 0.0;  // H_alpha of a uniform vector rounds to log d -/+ ulp
  return ExtendedReal(v);
}

HermitianOperator ansatz_optimizer(const StateFamily& family, const AlphaZ& p) {
  validate(family);
  if (dense_dimension(family) > kMaxDenseDim)
    throw std::invalid_argument(to_string(family) + ": total dimension exceeds the dense limit");
  if (is_separable_regime(family)) return build(family).op();
  return std::visit(
      Overloaded{
          [&](const BellDiagonal& f) {
            const auto imax = std::max_element(f.lambda.begin(), f.lambda.end()) - f.lambda.begin();
            const double lmax = f.lambda[imax];
            std::array<double, 4> w{};
            for (int j = 0; j < 4; ++j) {
              if (j == imax)
                w[j] = 0.5;
              else
                w[j] = lmax < 1.0 ? f.lambda[j] / (2.0 * (1.0 - lmax)) : 1.0 / 6.0;
            }
            return build(BellDiagonal{w}).op();
          },
          [&](const Werner& f) { return werner_state(0.5, f.d).op(); },
          [&](const Isotropic& f) { return isotropic_state(1.0 / f.d, f.d).op(); },
          [&](const Dicke& f) {
            const int d = static_cast<int>(f.k.size());
            const int D = ipow(d, f.N);
            std::vector<double> amp(d);
            for (int j = 0; j < d; ++j) amp[j] = std::sqrt(static_cast<double>(f.k[j]) / f.N);
            Vector v(D);
            std::vector<std::vector<int>> types(D);
            for (int x = 0; x < D; ++x) {
              types[x] = type_of(x, f.N, d);
              double a = 1.0;
              for (int j = 0; j < d; ++j) a *= std::pow(amp[j], types[x][j]);
              v(x) = a;
            }
            // phase averaging keeps only coherences within a fixed occupation type
            Matrix t = Matrix::Zero(D, D);
            for (int x = 0; x < D; ++x)
              for (int y = 0; y < D; ++y)
                if (types[x] == types[y]) t(x, y) = v(x) * std::conj(v(y));
            return HermitianOperator(t, Partition(std::vector<int>(f.N, d)));
          },
          [&](const MCBD& f) {
            const int d = static_cast<int>(f.p.size());
            return diagonal_ll(std::vector<double>(d, 1.0 / d));
          },
          [&](const PureBipartite& f) {
            const double beta = pure_beta(p);
            const double pmax = *std::max_element(f.p.begin(), f.p.end());
            std::vector<double> w(f.p.size(), 0.0);
            for (std::size_t i = 0; i < f.p.size(); ++i) {
              if (std::isinf(beta))
                w[i] = f.p[i] == pmax ? 1.0 : 0.0;
              else if (f.p[i] > 0.0)
                w[i] = std::pow(f.p[i] / pmax, beta);
            }
            const double s = std::accumulate(w.begin(), w.end(), 0.0);
            for (double& x : w) x /= s;
            return diagonal_ll(w);
          },
          [&](const GHZ& f) {
            const int D = ipow(f.d, f.M);
            const int step = (D - 1) / (f.d - 1);
            std::vector<double> diag(D, 0.0);
            for (int i = 0; i < f.d; ++i) diag[i * step] = 1.0 / f.d;
            return HermitianOperator::diagonal(diag, Partition(std::vector<int>(f.M, f.d)));
          },
          [&](const MaximallyCorrelated&) -> HermitianOperator {
            throw std::invalid_argument("ansatz_optimizer: use minimize_mc for general maximally correlated states");
          },
          [&](const AntisymPair& f) {
            const auto plus = werner_state(1.0, f.d);
            const auto minus = werner_state(0.0, f.d);
            const double d = f.d;
            return tensor_product_regrouped(plus, plus) * ((d + 1.0) / (2.0 * d)) +
                   tensor_product_regrouped(minus, minus) * ((d - 1.0) / (2.0 * d));
          },
      },
      family);
}

double lambda_sq_closed_form(const StateFamily& family) {
  validate(family);
  return std::visit(
      Overloaded{
          [](const BellDiagonal& f) {
            auto l = f.lambda;
            std::sort(l.begin(), l.end(), std::greater<>());
            return (l[0] + l[1]) / 2.0;
          },
          [](const Werner& f) {
            const double d = f.d;
            if (f.p > (d + 1.0) / (2.0 * d)) throw std::invalid_argument("lambda_sq_closed_form: werner p above (d+1)/2d");
            return f.p / (d * (d + 1.0)) + (1.0 - f.p) / (d * (d - 1.0));
          },
          [](const Isotropic& f) {
            const double d = f.d;
            if (f.F < 1.0 / (d * d)) throw std::invalid_argument("lambda_sq_closed_form: isotropic F below 1/d^2");
            return (f.F * d + 1.0) / (d * (d + 1.0));
          },
          [](const Dicke& f) { return dicke_overlap(f); },
          [](const MCBD& f) { return 1.0 / static_cast<double>(f.p.size()); },
          [](const PureBipartite& f) { return *std::max_element(f.p.begin(), f.p.end()); },
          [](const GHZ& f) { return 1.0 / f.d; },
          [](const MaximallyCorrelated&) -> double {
            throw std::invalid_argument("lambda_sq_closed_form: no formula for a general maximally correlated state");
          },
          [](const AntisymPair& f) {
            const double d = f.d, r = 2.0 / (d * (d - 1.0));
            return (d - 1.0) / (2.0 * d) * r * r;
          },
      },
      family);
}

bool is_separable_regime(const StateFamily& family) {
  validate(family);
  auto single_support = [](const auto& v) {
    return std::count_if(v.begin(), v.end(), [](auto x) { return x > 0; }) <= 1;
  };
  return std::visit(
      Overloaded{
          [](const BellDiagonal& f) { return *std::max_element(f.lambda.begin(), f.lambda.end()) <= 0.5; },
          [](const Werner& f) { return f.p >= 0.5; },
          [](const Isotropic& f) { return f.F <= 1.0 / f.d; },
          [&](const Dicke& f) { return single_support(f.k); },
          [](const MCBD& f) {
            const double u = 1.0 / static_cast<double>(f.p.size());
            return std::all_of(f.p.begin(), f.p.end(), [&](double x) { return std::abs(x - u) <= kProbTol; });
          },
          [&](const PureBipartite& f) { return single_support(f.p); },
          [](const GHZ&) { return false; },
          [](const MaximallyCorrelated& f) {
            const double scale = std::max(1.0, f.coeff.cwiseAbs().maxCoeff());
            Matrix off = f.coeff;
            off.diagonal().setZero();
            return off.cwiseAbs().maxCoeff() <= 1e-10 * scale;
          },
          [](const AntisymPair&) { return false; },
      },
      family);
}

std::string family_tag(const StateFamily& family) {
  return std::visit(Overloaded{
                        [](const BellDiagonal&) { return std::string("bell"); },
                        [](const Werner&) { return std::string("werner"); },
                        [](const Isotropic&) { return std::string("isotropic"); },
                        [](const Dicke&) { return std::string("dicke"); },
                        [](const MCBD&) { return std::string("mcbd"); },
                        [](const PureBipartite&) { return std::string("pure"); },
                        [](const GHZ&) { return std::string("ghz"); },
                        [](const MaximallyCorrelated&) { return std::string("mc"); },
                        [](const AntisymPair&) { return std::string("antisym"); },
                    },
                    family);
}

std::string to_string(const StateFamily& family) {
  return std::visit(
      Overloaded{
          [](const BellDiagonal& f) { return "bell:l=" + join(std::vector<double>(f.lambda.begin(), f.lambda.end())); },
          [](const Werner& f) { return "werner:p=" + num(f.p) + ",d=" + std::to_string(f.d); },
          [](const Isotropic& f) { return "isotropic:F=" + num(f.F) + ",d=" + std::to_string(f.d); },
          [](const Dicke& f) { return "dicke:N=" + std::to_string(f.N) + ",k=" + join(f.k); },
          [](const MCBD& f) { return "mcbd:p=" + join(f.p); },
          [](const PureBipartite& f) { return "pure:p=" + join(f.p); },
          [](const GHZ& f) { return "ghz:d=" + std::to_string(f.d) + ",M=" + std::to_string(f.M); },
          [](const MaximallyCorrelated& f) {
            return "mc:" + (f.source.empty() ? "d=" + std::to_string(f.coeff.rows()) : f.source);
          },
          [](const AntisymPair& f) { return "antisym:d=" + std::to_string(f.d); },
      },
      family);
}

FamilyFields parse_family_fields(const std::string& descriptor) {
  const auto colon = descriptor.find(':');
  FamilyFields out;
  out.tag = descriptor.substr(0, colon);
  if (colon == std::string::npos) return out;
  std::stringstream ss(descriptor.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw std::invalid_argument("family descriptor: expected key=value, got '" + item + "'");
    out.params[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

StateFamily family_from_fields(const FamilyFields& fields) {
  const auto& kv = fields.params;
  std::set<std::string> consumed;
  auto get = [&](std::initializer_list<const char*> keys) -> const std::string& {
    for (const char* k : keys)
      if (auto it = kv.find(k); it != kv.end()) {
        consumed.insert(k);
        return it->second;
      }
    throw std::invalid_argument("family '" + fields.tag + "': missing parameter '" + *keys.begin() + "'");
  };
  auto has = [&](const char* k) { return kv.count(k) > 0; };

  StateFamily f = [&]() -> StateFamily {
    const auto& t = fields.tag;
    if (t == "bell" || t == "bd") {
      const auto l = parse_list(get({"l", "lambda"}));
      if (l.size() != 4) throw std::invalid_argument("bell: need four weights");
      return BellDiagonal{{l[0], l[1], l[2], l[3]}};
    }
    if (t == "werner") return Werner{parse_number(get({"p"})), parse_int(get({"d"}))};
    if (t == "isotropic" || t == "iso") return Isotropic{parse_number(get({"F", "f"})), parse_int(get({"d"}))};
    if (t == "dicke") {
      std::vector<int> k;
      for (double x : parse_list(get({"k"}))) {
        if (x != std::floor(x)) throw std::invalid_argument("dicke: occupations must be integers");
        k.push_back(static_cast<int>(x));
      }
      const int N = has("N") ? parse_int(get({"N"})) : std::accumulate(k.begin(), k.end(), 0);
      return Dicke{N, k};
    }
    if (t == "mcbd") return MCBD{parse_list(get({"p"}))};
    if (t == "pure") return PureBipartite{parse_list(get({"p"}))};
    if (t == "ghz") return GHZ{parse_int(get({"d"})), parse_int(get({"M", "m"}))};
    if (t == "antisym") return AntisymPair{parse_int(get({"d"}))};
    if (t == "mc") {
      if (has("file")) {
        const auto& path = get({"file"});
        return MaximallyCorrelated{load_operator(path).matrix(), "file=" + path};
      }
      const int d = parse_int(get({"d"}));
      const auto seed = static_cast<std::uint64_t>(std::stoull(get({"seed"})));
      return MaximallyCorrelated{random_density(d, d, seed).matrix(),
                                 "seed=" + std::to_string(seed) + ",d=" + std::to_string(d)};
    }
    throw std::invalid_argument("unknown family '" + t + "'");
  }();
  for (const auto& [k, v] : kv)
    if (!consumed.count(k)) throw std::invalid_argument("family '" + fields.tag + "': unknown parameter '" + k + "'");
  validate(f);
  return f;
}

StateFamily parse_family(const std::string& descriptor) { return family_from_fields(parse_family_fields(descriptor)); }

}  // namespace renyi
