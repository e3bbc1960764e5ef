#include "renyi/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "renyi/parallel.hpp"

namespace renyi {

namespace {

constexpr double kBetaLineTol = 1e-12;
constexpr double kCommuteTol = 1e-10;
constexpr double kSupportTol = 1e-8;
constexpr double kDegenerateRel = 1e-12;
constexpr double kMcTol = 1e-10;

bool on_boundary_line(double beta) { return std::abs(std::abs(beta) - 1.0) <= kBetaLineTol; }

bool min_relative_regime(const AlphaZ& p) { return p.alpha() < kMinRelativeAlpha && std::abs(p.z() - 1.0) <= kBetaLineTol; }

// Kernel indices of tau: eigenvalues at or below the module cutoff.
std::vector<bool> kernel_mask(const RealVector& t) {
  const double tmax = t.size() ? t.maxCoeff() : 0.0;
  std::vector<bool> k(t.size());
  for (Eigen::Index i = 0; i < t.size(); ++i) k[i] = !(t(i) > kDefaultRelCut * tmax);
  return k;
}

HermitianOperator general_xi(const HermitianOperator& chi_op, const HermitianOperator& tau, double beta) {
  const auto eig = eig_hermitian(tau);
  const auto kernel = kernel_mask(eig.values);
  const Matrix c = eig.vectors.adjoint() * chi_op.matrix() * eig.vectors;
  const int d = tau.dim();
  Matrix x(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double phi = 0.0;
      const bool ki = kernel[i], kj = kernel[j];
      if (!ki && !kj) {
        phi = divided_difference_kernel(eig.values(i), eig.values(j), beta);
      } else if (ki != kj && beta > 0.0) {
        // 0^beta = 0 for beta > 0, leaving a^{beta-1} / beta
        const double a = ki ? eig.values(j) : eig.values(i);
        phi = std::pow(a, beta - 1.0) / beta;
      }
      x(i, j) = phi * c(i, j);
    }
  return HermitianOperator::hermitian_part(eig.vectors * x * eig.vectors.adjoint(), tau.partition());
}

// Contraction matrix Phi (D x d_k) whose column a is v_1 x .. x e_a x .. x v_N.
Matrix local_embedding(const std::vector<Vector>& v, std::size_t k) {
  Vector left = Vector::Ones(1), right = Vector::Ones(1);
  for (std::size_t j = 0; j < k; ++j) left = kron(left, v[j]);
  for (std::size_t j = k + 1; j < v.size(); ++j) right = kron(right, v[j]);
  const Eigen::Index dk = v[k].size(), nl = left.size(), nr = right.size();
  Matrix phi = Matrix::Zero(nl * dk * nr, dk);
  for (Eigen::Index l = 0; l < nl; ++l)
    for (Eigen::Index a = 0; a < dk; ++a)
      phi.col(a).segment((l * dk + a) * nr, nr) = left(l) * right;
  return phi;
}

struct AlternatingRun {
  double value = -std::numeric_limits<double>::infinity();
  std::vector<Vector> vectors;
};

AlternatingRun alternating_maximize(const Matrix& xi, const std::vector<int>& dims, std::uint64_t seed, int max_iters,
                                    double tol) {
  AlternatingRun run;
  run.vectors.reserve(dims.size());
  for (std::size_t k = 0; k < dims.size(); ++k)
    run.vectors.push_back(random_unit_vector(dims[k], seed * 1000003ull + k * 7919ull + 1));

  double prev = -std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iters; ++it) {
    double val = prev;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      const Matrix phi = local_embedding(run.vectors, k);
      Matrix local = phi.adjoint() * xi * phi;
      local = 0.5 * (local + local.adjoint());
      Eigen::SelfAdjointEigenSolver<Matrix> es(local);
      const Eigen::Index top = es.eigenvalues().size() - 1;
      run.vectors[k] = es.eigenvectors().col(top);
      val = es.eigenvalues()(top);
    }
    const bool done = std::isfinite(prev) && val - prev <= tol * std::max(1.0, std::abs(val));
    prev = val;
    if (done) break;
  }
  run.value = prev;
  return run;
}

Vector qubit_state(double theta, double phi) {
  Vector v(2);
  v(0) = std::cos(theta / 2.0);
  v(1) = std::polar(std::sin(theta / 2.0), phi);
  return v;
}

// Best completion over the second party given the first party vector.
std::pair<double, Vector> complete_second(const Matrix& xi, const Vector& a, int db) {
  Matrix local = Matrix::Zero(db, db);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) local += std::conj(a(i)) * a(j) * xi.block(i * db, j * db, db, db);
  local = 0.5 * (local + local.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(local);
  const Eigen::Index top = db - 1;
  return {es.eigenvalues()(top), es.eigenvectors().col(top)};
}

double chi_scale(const HermitianOperator& h) { return std::max(1.0, h.max_abs()); }

}  // namespace

std::string to_string(XiRoute r) {
  switch (r) {
    case XiRoute::DividedDifference: return "divided-difference";
    case XiRoute::BoundaryLine: return "boundary-line";
    case XiRoute::Commuting: return "commuting";
    case XiRoute::MinRelative: return "min-relative";
  }
  return "unknown";
}

XiRoute xi_route_from_string(const std::string& s) {
  if (s == "divided-difference") return XiRoute::DividedDifference;
  if (s == "boundary-line") return XiRoute::BoundaryLine;
  if (s == "commuting") return XiRoute::Commuting;
  if (s == "min-relative") return XiRoute::MinRelative;
  throw std::invalid_argument("unknown xi route: " + s);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::CertifiedOptimal: return "certified-optimal";
    case Verdict::Refuted: return "refuted";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "certified-optimal") return Verdict::CertifiedOptimal;
  if (s == "refuted") return Verdict::Refuted;
  if (s == "inconclusive") return Verdict::Inconclusive;
  throw std::invalid_argument("unknown verdict: " + s);
}

HermitianOperator chi(const HermitianOperator& rho, const HermitianOperator& tau, const AlphaZ& p) {
  if (p.on_umegaki_line()) throw std::invalid_argument("chi: alpha = 1 is handled by the log-mean kernel");
  if (rho.dim() != tau.dim()) throw std::invalid_argument("chi: dimension mismatch");
  const auto r = matrix_power(rho, p.alpha() / (2.0 * p.z()));
  const auto s = matrix_power(tau, p.beta());
  const auto middle = HermitianOperator::hermitian_part(r.matrix() * s.matrix() * r.matrix(), rho.partition());
  const auto mid_pow = matrix_power(middle, p.z() - 1.0);
  return HermitianOperator::hermitian_part(r.matrix() * mid_pow.matrix() * r.matrix(), rho.partition());
}

double divided_difference_kernel(double a, double b, double beta) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("divided_difference_kernel: arguments must be positive");
  if (std::abs(a - b) < kDegenerateRel * std::max(a, b)) return std::pow(a, beta - 1.0);
  const double log_ratio = std::log(a / b);
  const double x = beta * log_ratio;
  const double g = (x == 0.0) ? 1.0 : std::expm1(x) / x;
  const double r_minus_1 = a / b - 1.0;
  const double h = std::log1p(r_minus_1) / r_minus_1;
  return std::pow(b, beta - 1.0) * g * h;
}

XiEvaluation xi(const HermitianOperator& rho, const HermitianOperator& tau, const AlphaZ& p, bool force_general) {
  if (!(tau.max_abs() > 0.0) || support_rank(tau) == 0) throw std::invalid_argument("xi: tau has empty support");
  if (rho.dim() != tau.dim()) throw std::invalid_argument("xi: dimension mismatch");
  const double beta = p.beta();

  if (min_relative_regime(p)) return {support_projector(rho), XiRoute::MinRelative, beta};

  if (!p.on_umegaki_line() && on_boundary_line(beta)) {
    const auto c = chi(rho, tau, p);
    if (beta > 0.0) return {c, XiRoute::BoundaryLine, beta};
    const auto tinv = matrix_power(tau, -1.0);
    return {HermitianOperator::hermitian_part(tinv.matrix() * c.matrix() * tinv.matrix(), rho.partition()),
            XiRoute::BoundaryLine, beta};
  }

  if (!force_general && commutator_norm(rho, tau) <= kCommuteTol) {
    const auto ra = matrix_power(rho, p.alpha());
    const auto ta = matrix_power(tau, -p.alpha());
    const Matrix m = ra.matrix() * ta.matrix();
    return {HermitianOperator::hermitian_part(m, rho.partition()), XiRoute::Commuting, beta};
  }

  // alpha = 1: chi reduces to rho and the kernel to the logarithmic mean
  const HermitianOperator c = p.on_umegaki_line() ? rho : chi(rho, tau, p);
  return {general_xi(c, tau, beta), XiRoute::DividedDifference, beta};
}

bool in_support_set(const HermitianOperator& rho, const HermitianOperator& tau, const AlphaZ& p) {
  const auto pr = support_projector(rho);
  if (!p.on_umegaki_line() && std::abs(p.beta() - 1.0) <= kBetaLineTol) {
    const auto sandwich = HermitianOperator::hermitian_part(pr.matrix() * tau.matrix() * pr.matrix(), rho.partition());
    return support_rank(sandwich) == support_rank(rho);
  }
  const int d = rho.dim();
  const Matrix outside = (Matrix::Identity(d, d) - support_projector(tau).matrix()) * pr.matrix();
  return outside.cwiseAbs().maxCoeff() < kSupportTol;
}

ProductOverlap max_product_overlap(const HermitianOperator& xi_op, const Partition& parties,
                                   const ProductOverlapOptions& opts) {
  if (parties.parties() < 2)
    throw std::invalid_argument("max_product_overlap: needs at least two parties (single party maximum is lambda_max)");
  if (parties.total() != xi_op.dim()) throw std::invalid_argument("max_product_overlap: partition does not match operator");
  if (opts.restarts < 1) throw std::invalid_argument("max_product_overlap: restarts must be >= 1");

  std::vector<AlternatingRun> runs(opts.restarts);
  parallel_for(opts.restarts, [&](int r) {
    runs[r] = alternating_maximize(xi_op.matrix(), parties.dims(), opts.seed + static_cast<std::uint64_t>(r),
                                   opts.max_iters, opts.tol);
  });

  ProductOverlap out;
  out.restart_values.reserve(runs.size());
  out.value = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < opts.restarts; ++r) {
    out.restart_values.push_back(runs[r].value);
    if (runs[r].value > out.value) {
      out.value = runs[r].value;
      out.best_restart = r;
    }
  }
  out.witness = runs[out.best_restart].vectors;
  return out;
}

ProductOverlap grid_product_overlap(const HermitianOperator& xi_op, const Partition& parties, int theta_steps) {
  if (parties.parties() != 2 || parties[0] != 2 || parties.total() > 16)
    throw std::invalid_argument("grid_product_overlap: supports qubit x d partitions with total dimension <= 16");
  if (theta_steps < 2) throw std::invalid_argument("grid_product_overlap: theta_steps must be >= 2");
  const Matrix& m = xi_op.matrix();
  const int db = parties[1];

  double best = -std::numeric_limits<double>::infinity();
  double best_t = 0.0, best_p = 0.0;
  auto scan = [&](double t0, double t1, int nt, double p0, double p1, int np) {
    for (int i = 0; i <= nt; ++i) {
      const double th = t0 + (t1 - t0) * i / nt;
      for (int j = 0; j < np; ++j) {
        const double ph = p0 + (p1 - p0) * j / np;
        const double v = complete_second(m, qubit_state(th, ph), db).first;
        if (v > best) {
          best = v;
          best_t = th;
          best_p = ph;
        }
      }
    }
  };
  const double pi = std::numbers::pi;
  double dt = pi / theta_steps, dp = 2.0 * pi / (2 * theta_steps);
  scan(0.0, pi, theta_steps, 0.0, 2.0 * pi, 2 * theta_steps);
  for (int round = 0; round < 6; ++round) {
    const double ct = best_t, cp = best_p;
    scan(std::max(0.0, ct - dt), std::min(pi, ct + dt), 20, cp - dp, cp + dp, 20);
    dt /= 10.0;
    dp /= 10.0;
  }

  ProductOverlap out;
  const Vector a = qubit_state(best_t, best_p);
  auto [v, b] = complete_second(m, a, db);
  out.value = v;
  out.witness = {a, b};
  out.restart_values = {v};
  return out;
}

void assign_verdict(CertificateReport& report, double tol_cert) {
  const double tol = tol_cert * std::max(std::abs(report.q_value), 1e-300);
  if (!report.support_ok || report.margin < -10.0 * tol)
    report.verdict = Verdict::Refuted;
  else if (report.margin >= -tol)
    report.verdict = Verdict::CertifiedOptimal;
  else
    report.verdict = Verdict::Inconclusive;
}

CertificateReport certify_optimizer(const DensityMatrix& rho, const HermitianOperator& tau, const AlphaZ& p,
                                    const FreeSet& free_set, const CertifyOptions& opts) {
  if (!p.in_dpi_region()) {
    std::ostringstream os;
    os << "certify_optimizer: " << p << " lies outside the data-processing region";
    throw std::invalid_argument(os.str());
  }
  if (rho.dim() != tau.dim()) throw std::invalid_argument("certify_optimizer: dimension mismatch");

  CertificateReport rep;
  rep.support_ok = in_support_set(rho, tau, p);
  const auto xe = xi(rho, tau, p);
  rep.route = xe.route;
  rep.beta = xe.beta;

  if (xe.route == XiRoute::MinRelative)
    rep.q_value = support_projector(rho).trace_product(tau);
  else if (p.on_umegaki_line())
    rep.q_value = rho.op().trace();
  else
    rep.q_value = q_alpha_z(rho, tau, p).value();

  if (free_set.kind == FreeSet::Kind::Incoherent) {
    rep.free_set = "incoherent";
    const int d = rho.dim();
    const Matrix basis = free_set.basis.size() ? free_set.basis : Matrix::Identity(d, d);
    const Matrix rotated = basis.adjoint() * xe.xi.matrix() * basis;
    Eigen::Index best = 0;
    rotated.diagonal().real().maxCoeff(&best);
    rep.lambda_sq = rotated(best, best).real();
    rep.witness = {basis.col(best)};
    rep.restarts = 1;
    rep.restarts_at_best = 1;
  } else {
    rep.free_set = "sep";
    const auto& parts = rho.partition();
    const auto po = max_product_overlap(xe.xi, parts, opts.overlap);
    rep.lambda_sq = po.value;
    rep.witness = po.witness;
    rep.restarts = static_cast<int>(po.restart_values.size());
    rep.best_restart = po.best_restart;
    const double hit_tol = 1e-9 * std::max(1.0, std::abs(po.value));
    rep.restarts_at_best = static_cast<int>(std::count_if(po.restart_values.begin(), po.restart_values.end(),
                                                          [&](double v) { return po.value - v <= hit_tol; }));
    if (opts.grid_fallback && parts.parties() == 2 && parts[0] == 2 && parts.total() <= 16) {
      const auto grid = grid_product_overlap(xe.xi, parts, opts.grid_theta_steps);
      rep.grid_checked = true;
      if (grid.value > rep.lambda_sq) {
        rep.lambda_sq = grid.value;
        rep.witness = grid.witness;
      }
    }
  }

  rep.margin = rep.q_value - rep.lambda_sq;
  assign_verdict(rep, opts.tol_cert);
  if (rep.verdict == Verdict::CertifiedOptimal) rep.value = d_alpha_z(rho, tau, p).value();
  return rep;
}

Matrix mc_coefficients(const HermitianOperator& rho) {
  const auto& part = rho.partition();
  if (part.parties() != 2 || part[0] != part[1])
    throw std::invalid_argument("maximally correlated form needs a (d, d) bipartition");
  const int d = part[0];
  const double scale = std::max(1.0, rho.max_abs());
  Matrix coeff(d, d);
  const Matrix& m = rho.matrix();
  for (int r = 0; r < d * d; ++r)
    for (int c = 0; c < d * d; ++c) {
      const bool rd = (r / d) == (r % d), cd = (c / d) == (c % d);
      if (rd && cd)
        coeff(r / d, c / d) = m(r, c);
      else if (std::abs(m(r, c)) > kMcTol * scale)
        throw std::invalid_argument("state is not maximally correlated in the computational basis");
    }
  return coeff;
}

CertificateReport marginal_condition_mc(const DensityMatrix& rho, const HermitianOperator& tau, const AlphaZ& p,
                                        double tol_cert) {
  if (!p.in_dpi_region()) throw std::invalid_argument("marginal_condition_mc: parameters outside the DPI region");
  mc_coefficients(rho);
  const int d = rho.partition()[0];
  const Matrix& t = tau.matrix();
  const double tscale = std::max(1.0, tau.max_abs());
  std::vector<double> tl(d, 0.0);
  for (int r = 0; r < d * d; ++r)
    for (int c = 0; c < d * d; ++c) {
      const bool on_ll = (r == c) && (r / d == r % d);
      if (on_ll)
        tl[r / d] = t(r, c).real();
      else if (std::abs(t(r, c)) > kMcTol * tscale)
        throw std::invalid_argument("marginal_condition_mc: tau is not diagonal on span{|i,i>}");
    }

  CertificateReport rep;
  rep.free_set = "sep";
  rep.support_ok = in_support_set(rho, tau, p);
  rep.beta = p.beta();
  rep.route = XiRoute::DividedDifference;

  HermitianOperator c = rho.op();
  if (p.on_umegaki_line()) {
    rep.q_value = rho.op().trace();
  } else {
    c = chi(rho, tau, p);
    rep.q_value = q_alpha_z(rho, tau, p).value();
  }
  const double tmax = *std::max_element(tl.begin(), tl.end());
  const double exponent = p.beta() - 1.0;
  double best = -std::numeric_limits<double>::infinity();
  int best_l = 0;
  for (int l = 0; l < d; ++l) {
    const int idx = l * d + l;
    const double cll = c.matrix()(idx, idx).real();
    double lhs;
    if (tl[l] > kDefaultRelCut * tmax) {
      lhs = std::pow(tl[l], exponent) * cll;
    } else if (std::abs(cll) <= 1e-14 * chi_scale(c)) {
      lhs = 0.0;
    } else {
      lhs = (exponent < 0.0) ? std::numeric_limits<double>::infinity() : cll * (exponent == 0.0 ? 1.0 : 0.0);
    }
    if (lhs > best) {
      best = lhs;
      best_l = l;
    }
  }
  rep.lambda_sq = best;
  Vector e = Vector::Zero(d);
  e(best_l) = 1.0;
  rep.witness = {e, e};
  rep.restarts = 0;
  rep.margin = rep.q_value - rep.lambda_sq;
  assign_verdict(rep, tol_cert);
  if (rep.verdict == Verdict::CertifiedOptimal) rep.value = d_alpha_z(rho, tau, p).value();
  return rep;
}

}  // namespace renyi
