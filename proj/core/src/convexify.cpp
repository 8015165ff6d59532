#include "lowmode/convexify.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>

namespace lowmode {

namespace {

TrigPoly symmetric_product(const TrigPoly& xi, const TrigPoly& gen) {
  return tp_multiply(xi, tp_derivative(gen)) +
         tp_multiply(gen, tp_derivative(xi));
}

std::vector<TrigPoly> span_basis(const FrequencySet& g) {
  std::vector<TrigPoly> basis;
  for (const auto& lambda : g) {
    if (lambda.is_zero()) {
      basis.push_back(TrigPoly::constant(g.basis(), 1.0));
    } else {
      basis.push_back(TrigPoly::harmonic(g.basis(), lambda, 1.0, 0.0));
      basis.push_back(TrigPoly::harmonic(g.basis(), lambda, 0.0, 1.0));
    }
  }
  return basis;
}

// Row indices for the (frequency, cos/sin) components outside g.
struct RowIndex {
  std::map<LatticeFrequency, std::pair<int, int>> rows;  // freq -> (cos, sin)
  int count = 0;

  void add(const LatticeFrequency& f) {
    if (rows.count(f)) return;
    rows[f] = {count, count + 1};
    count += 2;
  }
};

void scatter(const TrigPoly& p, const FrequencySet& g, const RowIndex& idx,
             Eigen::VectorXd& out) {
  for (const auto& [f, t] : p.terms()) {
    if (g.contains(f)) continue;
    auto it = idx.rows.find(f);
    if (it == idx.rows.end()) continue;
    out[it->second.first] += t.c;
    out[it->second.second] += t.s;
  }
}

}  // namespace

ConvexDecomposition convex_decompose(const TrigPoly& eta1, double nu,
                                      const std::vector<TrigPoly>& gens,
                                      const FrequencySet& g) {
  if (!(nu > 0.0)) throw NotInSpanError("residual budget must be positive");
  if (!(eta1.basis() == g.basis()))
    throw WindowMismatchError("control and span use different bases");
  for (const auto& gen : gens) {
    if (!gen.supported_in(g) || !burgers_bilinear(gen).supported_in(g))
      throw SaturationPreconditionError(
          "generators must satisfy the base inclusion");
  }

  const double scale = std::max(eta1.max_abs_coeff(), 1.0);
  const std::vector<TrigPoly> basis = span_basis(g);

  // Joint linear representation: eta1 = eta_tilde - sum_g sym_prod(xi_g, g).
  // All generators are solved together because the out-of-span by-products of
  // different rays must cancel each other, which a per-ray fit cannot see.
  std::vector<TrigPoly> used_gens;
  std::vector<TrigPoly> used_xis;
  TrigPoly correction(eta1.basis());  // sum_g sym_prod(xi_g, g), exact

  const TrigPoly target = tp_scale(eta1.outside(g), -1.0);
  if (!target.is_zero()) {
    struct Column {
      std::size_t gen;
      std::size_t elt;
      TrigPoly poly;
    };
    std::vector<Column> cols;
    RowIndex idx;
    for (const auto& [f, t] : target.terms()) idx.add(f);
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      for (std::size_t ei = 0; ei < basis.size(); ++ei) {
        TrigPoly prod = symmetric_product(basis[ei], gens[gi]);
        if (prod.outside(g).is_zero()) continue;  // no out-of-span leverage
        for (const auto& [f, t] : prod.terms())
          if (!g.contains(f)) idx.add(f);
        cols.push_back({gi, ei, std::move(prod)});
      }
    }

    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(idx.count, (int)cols.size());
    for (int j = 0; j < (int)cols.size(); ++j) {
      Eigen::VectorXd col = Eigen::VectorXd::Zero(idx.count);
      scatter(cols[j].poly, g, idx, col);
      a.col(j) = col;
    }
    Eigen::VectorXd b = Eigen::VectorXd::Zero(idx.count);
    scatter(target, g, idx, b);

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
    Eigen::VectorXd x = cod.solve(b);
    const double xmax = x.size() ? x.cwiseAbs().maxCoeff() : 0.0;

    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      TrigPoly xi(eta1.basis());
      for (int j = 0; j < (int)cols.size(); ++j) {
        if (cols[j].gen != gi) continue;
        if (std::abs(x[j]) <= 1e-12 * std::max(xmax, scale)) continue;
        xi += tp_scale(basis[cols[j].elt], x[j]);
      }
      if (xi.is_zero()) continue;
      correction += symmetric_product(xi, gens[gi]);
      used_gens.push_back(gens[gi]);
      used_xis.push_back(xi);
    }
  }

  if ((eta1 + correction).outside(g).max_abs_coeff() > 1e-9 * scale)
    throw NotInSpanError("control is not in the convexification span");

  ConvexDecomposition d(eta1.basis());
  d.eta_tilde = (eta1 + correction).restricted_to(g);
  d.gens = used_gens;
  d.xis = used_xis;

  const std::size_t m = used_xis.size();
  if (m == 0) {
    d.eta = d.eta_tilde;
    d.epsilon = 1.0;
    d.residual_bound = 0.0;
    d.zetas = {TrigPoly(eta1.basis()), TrigPoly(eta1.basis())};
    d.weights = {{1, 2}, {1, 2}};
    return d;
  }

  TrigPoly residual_raw(eta1.basis());
  for (const auto& xi : used_xis) residual_raw += burgers_bilinear(xi);
  const double bound = residual_raw.sup_bound();

  double eps = 1.0;
  for (int i = 0; i < 64 && eps * eps * bound > nu; ++i) eps *= 0.5;
  if (eps * eps * bound > nu)
    throw NotInSpanError("residual budget unreachable on the dyadic grid");

  d.epsilon = eps;
  d.residual_poly = tp_scale(residual_raw, eps * eps);
  d.residual_bound = eps * eps * bound;

  d.eta = d.eta_tilde;
  for (const auto& gen : used_gens)
    d.eta += tp_scale(burgers_bilinear(gen), 1.0 / (eps * eps));

  const double root_m = std::sqrt(static_cast<double>(m));
  d.zetas.reserve(2 * m);
  for (std::size_t j = 0; j < m; ++j) {
    TrigPoly zt = tp_linear(used_xis[j], used_gens[j], eps, 1.0 / eps);
    d.zetas.push_back(tp_scale(zt, root_m));
  }
  for (std::size_t j = 0; j < m; ++j)
    d.zetas.push_back(tp_scale(d.zetas[j], -1.0));
  d.weights.assign(2 * m, Rational{1, static_cast<std::int64_t>(2 * m)});
  return d;
}

TrigPoly averaged_control(const ConvexDecomposition& d) {
  TrigPoly out = d.eta;
  for (std::size_t j = 0; j < d.zetas.size(); ++j)
    out += tp_scale(burgers_bilinear(d.zetas[j]), -d.weights[j].value());
  return out;
}

}  // namespace lowmode
