#include "renyi/minimizers.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <random>

#include "renyi/certificates.hpp"
#include "renyi/parallel.hpp"

namespace renyi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

std::vector<double> pin_small(std::vector<double> s, double pin) {
  bool changed = false;
  for (double& x : s)
    if (x < pin && x != 0.0) x = 0.0, changed = true;
  if (changed) {
    const double t = std::accumulate(s.begin(), s.end(), 0.0);
    for (double& x : s) x /= t;
  }
  return s;
}

std::vector<double> gradient(const SimplexProblem& pr, const std::vector<double>& s, double f0, double h) {
  if (pr.gradient) {
    auto g = pr.gradient(s);
    // on a face where the derivative blows up, the secant slope over h still points inward
    std::vector<double> x = s;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (std::isfinite(g[i])) continue;
      x[i] = s[i] + h;
      g[i] = (pr.objective(x) - f0) / h;
      x[i] = s[i];
      if (!std::isfinite(g[i])) g[i] = std::copysign(1e12, g[i]);
    }
    return g;
  }
  std::vector<double> g(s.size());
  std::vector<double> x = s;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double xi = s[i];
    if (xi - h > 0.0) {
      x[i] = xi + h;
      const double fp = pr.objective(x);
      x[i] = xi - h;
      const double fm = pr.objective(x);
      g[i] = (fp - fm) / (2.0 * h);
    } else {
      x[i] = xi + h;
      g[i] = (pr.objective(x) - f0) / h;
    }
    x[i] = xi;
    if (!std::isfinite(g[i])) g[i] = std::copysign(1e12, g[i]);
  }
  return g;
}

// ||s - P(s - g)||_inf, zero exactly at a stationary point of the simplex problem
double projected_step_norm(const std::vector<double>& s, const std::vector<double>& g) {
  std::vector<double> y(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) y[i] = s[i] - g[i];
  const auto py = project_to_simplex(y);
  double m = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) m = std::max(m, std::abs(s[i] - py[i]));
  return m;
}

struct Run {
  std::vector<double> s;
  double f = kInf;
  int iters = 0;
};

Run descend(const SimplexProblem& pr, std::vector<double> s, const SimplexOptions& o) {
  s = pin_small(project_to_simplex(s), o.pin);
  Run run{s, pr.objective(s), 0};
  if (!std::isfinite(run.f)) {
    // push toward the interior until the objective is finite
    const double u = 1.0 / s.size();
    for (int k = 0; k < 60 && !std::isfinite(run.f); ++k) {
      for (double& x : run.s) x = 0.5 * x + 0.5 * u;
      run.f = pr.objective(run.s);
    }
    if (!std::isfinite(run.f)) return run;
  }

  std::vector<double> g = gradient(pr, run.s, run.f, o.fd_step), s_prev, g_prev;
  double t = 1.0;
  int small_gains = 0;
  for (int it = 0; it < o.max_iters; ++it) {
    run.iters = it + 1;
    if (!s_prev.empty()) {
      std::vector<double> ds(s.size()), dg(s.size());
      for (std::size_t i = 0; i < s.size(); ++i) ds[i] = run.s[i] - s_prev[i], dg[i] = g[i] - g_prev[i];
      const double sy = dot(ds, dg);
      t = sy > 0.0 ? dot(ds, ds) / sy : 2.0 * t;
    }
    t = std::clamp(t, 1e-14, 1e6);

    std::vector<double> cand(s.size());
    double f_new = kInf;
    bool accepted = false;
    for (int bt = 0; bt < 80; ++bt) {
      for (std::size_t i = 0; i < s.size(); ++i) cand[i] = run.s[i] - t * g[i];
      cand = pin_small(project_to_simplex(cand), o.pin);
      std::vector<double> step(s.size());
      for (std::size_t i = 0; i < s.size(); ++i) step[i] = run.s[i] - cand[i];
      f_new = pr.objective(cand);
      if (std::isfinite(f_new) && f_new <= run.f - 1e-4 * dot(g, step)) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted || f_new >= run.f) break;
    const double gain = (run.f - f_new) / std::max(1.0, std::abs(run.f));
    s_prev = run.s;
    g_prev = g;
    run.s = cand;
    run.f = f_new;
    g = gradient(pr, run.s, run.f, o.fd_step);
    // BB steps are non-monotone in progress: stop only after a run of small gains
    // or when the projected gradient step vanishes
    small_gains = gain < o.rel_tol ? small_gains + 1 : 0;
    if (small_gains >= 3 || projected_step_norm(run.s, g) < o.rel_tol) break;
  }
  return run;
}

std::vector<double> dirichlet(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> e(1.0);
  std::vector<double> v(n);
  for (double& x : v) x = e(rng);
  const double t = std::accumulate(v.begin(), v.end(), 0.0);
  for (double& x : v) x /= t;
  return v;
}

// Divergence of rho' (already in the basis where sigma is diagonal) against
// sigma = diag(s[map[i]]). Q-based for alpha != 1 so the objective is convex.
class DiagonalObjective {
 public:
  DiagonalObjective(const HermitianOperator& rho_rot, std::vector<int> map, const AlphaZ& p)
      : p_(p), map_(std::move(map)) {
    const auto eig = eig_hermitian(rho_rot);
    diag_ = rho_rot.matrix().diagonal().real();
    if (p.on_umegaki_line()) {
      const double lmax = eig.values.maxCoeff();
      for (Eigen::Index i = 0; i < eig.values.size(); ++i)
        if (eig.values(i) > kDefaultRelCut * lmax) neg_entropy_ += eig.values(i) * std::log2(eig.values(i));
    } else {
      r_ = matrix_power(eig, rho_rot.partition(), p.alpha() / (2.0 * p.z())).matrix();
      sign_ = p.alpha() > 1.0 ? 1.0 : -1.0;
    }
    scale_ = std::max(1e-300, diag_.maxCoeff());
  }

  double operator()(const std::vector<double>& s) const {
    const int n = static_cast<int>(map_.size());
    if (p_.on_umegaki_line()) {
      double cross = 0.0;
      for (int i = 0; i < n; ++i) {
        if (diag_(i) <= kDefaultRelCut * scale_) continue;
        const double si = s[map_[i]];
        if (!(si > 0.0)) return kInf;
        cross += diag_(i) * std::log2(si);
      }
      return neg_entropy_ - cross;
    }
    const double beta = p_.beta();
    RealVector w(n);
    for (int i = 0; i < n; ++i) {
      const double si = s[map_[i]];
      if (si > 0.0) {
        w(i) = std::pow(si, beta);
      } else {
        if (beta < 0.0 && diag_(i) > kDefaultRelCut * scale_) return kInf;  // supp(rho) not inside supp(sigma)
        w(i) = 0.0;
      }
    }
    const Matrix m = r_ * w.asDiagonal() * r_;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    // rounding noise on the null space would otherwise contribute (1e-17)^z each
    const double cut = kDefaultRelCut * std::max(es.eigenvalues().maxCoeff(), 0.0);
    double q = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      if (es.eigenvalues()(i) > cut) q += std::pow(es.eigenvalues()(i), p_.z());
    return sign_ * q;
  }

  // d/ds_j of operator(); +-inf where a weight sits at zero with beta < 1
  std::vector<double> gradient(const std::vector<double>& s) const {
    const int n = static_cast<int>(map_.size());
    std::vector<double> g(s.size(), 0.0);
    if (p_.on_umegaki_line()) {
      for (int i = 0; i < n; ++i) {
        if (diag_(i) <= kDefaultRelCut * scale_) continue;
        const double si = s[map_[i]];
        g[map_[i]] -= si > 0.0 ? diag_(i) / (si * std::log(2.0)) : kInf;
      }
      return g;
    }
    const double beta = p_.beta();
    RealVector w(n);
    for (int i = 0; i < n; ++i) {
      const double si = s[map_[i]];
      w(i) = si > 0.0 ? std::pow(si, beta) : 0.0;
    }
    // dQ/dw_i = z [R (R W R)^(z-1) R]_ii, power taken on the support
    const Matrix m = r_ * w.asDiagonal() * r_;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
    const auto& ev = es.eigenvalues();
    const double cut = kDefaultRelCut * std::max(ev.maxCoeff(), 0.0);
    RealVector f(n);
    for (Eigen::Index i = 0; i < n; ++i) f(i) = ev(i) > cut ? std::pow(ev(i), p_.z() - 1.0) : 0.0;
    const Matrix inner = es.eigenvectors() * f.asDiagonal() * es.eigenvectors().adjoint();
    const Matrix chi = r_ * inner * r_;
    for (int i = 0; i < n; ++i) {
      const double dq_dw = p_.z() * chi(i, i).real();
      if (dq_dw == 0.0) continue;
      const double si = s[map_[i]];
      const double dw_ds = si > 0.0 ? beta * std::pow(si, beta - 1.0) : (beta < 1.0 ? kInf : (beta == 1.0 ? 1.0 : 0.0));
      g[map_[i]] += sign_ * dq_dw * dw_ds;
    }
    return g;
  }

 private:
  AlphaZ p_;
  std::vector<int> map_;
  RealVector diag_;
  Matrix r_;
  double sign_ = 1.0;
  double neg_entropy_ = 0.0;
  double scale_ = 1.0;
};

SimplexResult solve_diagonal(const HermitianOperator& rho_rot, std::vector<int> map, int dim, const AlphaZ& p,
                             const std::vector<double>& warm, const SimplexOptions& opts) {
  if (!p.in_dpi_region()) throw std::invalid_argument("simplex minimization requires (alpha, z) in the DPI region");
  const auto obj = std::make_shared<DiagonalObjective>(rho_rot, std::move(map), p);
  SimplexProblem pr{[obj](const std::vector<double>& s) { return (*obj)(s); }, dim,
                    p.on_umegaki_line() ? Convexity::Convex : Convexity::QuasiFromQ,
                    [obj](const std::vector<double>& s) { return obj->gradient(s); }};
  return minimize_simplex(pr, warm, opts);
}

}  // namespace

std::vector<double> project_to_simplex(const std::vector<double>& v) {
  const std::size_t n = v.size();
  if (n == 0) throw std::invalid_argument("project_to_simplex: empty vector");
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double css = 0.0, theta = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    css += u[j];
    const double t = (css - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) theta = t;
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::max(v[i] - theta, 0.0);
  return out;
}

SimplexResult minimize_simplex(const SimplexProblem& problem, const std::vector<double>& warm,
                               const SimplexOptions& opts) {
  if (problem.dimension < 1) throw std::invalid_argument("minimize_simplex: dimension must be >= 1");
  if (static_cast<int>(warm.size()) != problem.dimension)
    throw std::invalid_argument("minimize_simplex: warm start has the wrong dimension");
  const int starts = std::max(1, opts.starts);
  std::vector<Run> runs(starts);
  parallel_for(starts, [&](int k) {
    const auto s0 = k == 0 ? warm : dirichlet(problem.dimension, opts.seed + 7919ull * k);
    runs[k] = descend(problem, s0, opts);
  });

  SimplexResult out;
  out.objective = kInf;
  for (int k = 0; k < starts; ++k) {
    out.start_values.push_back(runs[k].f);
    if (runs[k].f < out.objective) {
      out.objective = runs[k].f;
      out.best_start = k;
    }
  }
  out.point = runs[out.best_start].s;
  out.iterations = runs[out.best_start].iters;
  return out;
}

MinimizeResult minimize_incoherent(const DensityMatrix& rho, const Matrix& basis, const AlphaZ& p,
                                   const SimplexOptions& opts) {
  const int d = rho.dim();
  const Matrix b = basis.size() ? basis : Matrix::Identity(d, d);
  if (b.rows() != d || b.cols() != d) throw std::invalid_argument("minimize_incoherent: basis has the wrong shape");
  if ((b.adjoint() * b - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("minimize_incoherent: basis is not orthonormal");

  const auto rot = HermitianOperator::hermitian_part(b.adjoint() * rho.matrix() * b, rho.partition());
  std::vector<int> map(d);
  std::iota(map.begin(), map.end(), 0);
  std::vector<double> warm(d);
  for (int i = 0; i < d; ++i) warm[i] = std::max(0.0, rot.matrix()(i, i).real());

  MinimizeResult r{0.0, {}, HermitianOperator::zero(rho.partition()), {}};
  r.solver = solve_diagonal(rot, map, d, p, warm, opts);
  r.weights = r.solver.point;
  r.sigma = HermitianOperator::diagonal(r.weights, rho.partition()).conjugate_by(b);
  r.value = d_alpha_z(rho, r.sigma, p).value();
  return r;
}

MinimizeResult minimize_mc(const DensityMatrix& rho, const AlphaZ& p, const SimplexOptions& opts) {
  const Matrix c = mc_coefficients(rho);
  const int d = static_cast<int>(c.rows());
  // rho and every candidate live on span{|i,i>}, so the problem is the incoherent one for c
  const HermitianOperator coeff(c);
  std::vector<int> map(d);
  std::iota(map.begin(), map.end(), 0);
  std::vector<double> warm(d);
  for (int i = 0; i < d; ++i) warm[i] = std::max(0.0, c(i, i).real());

  MinimizeResult r{0.0, {}, HermitianOperator::zero(rho.partition()), {}};
  r.solver = solve_diagonal(coeff, map, d, p, warm, opts);
  r.weights = r.solver.point;
  std::vector<double> diag(d * d, 0.0);
  for (int i = 0; i < d; ++i) diag[i * d + i] = r.weights[i];
  r.sigma = HermitianOperator::diagonal(diag, rho.partition());
  r.value = d_alpha_z(rho, r.sigma, p).value();
  return r;
}

double conditional_entropy_mc(const DensityMatrix& rho, const AlphaZ& p, const SimplexOptions& opts) {
  const Matrix c = mc_coefficients(rho);
  const int d = static_cast<int>(c.rows());
  std::vector<int> map(d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) map[a * d + b] = b;
  std::vector<double> warm(d);
  for (int i = 0; i < d; ++i) warm[i] = std::max(0.0, c(i, i).real());
  const auto sol = solve_diagonal(rho.op(), map, d, p, warm, opts);

  std::vector<double> diag(d * d);
  for (int i = 0; i < d * d; ++i) diag[i] = sol.point[map[i]];
  const auto sigma = HermitianOperator::diagonal(diag, rho.partition());
  return -d_alpha_z(rho, sigma, p).value();
}

std::pair<double, double> golden_section_1d(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (!(hi >= lo)) throw std::invalid_argument("golden_section_1d: empty bracket");
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  // the bracket ends may beat the interior for monotone objectives
  double x = 0.5 * (a + b), fx = f(x);
  for (double e : {lo, hi}) {
    const double fe = f(e);
    if (fe < fx) x = e, fx = fe;
  }
  return {x, fx};
}

}  // namespace renyi
