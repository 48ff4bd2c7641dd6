#include "levy/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Eigenvalues>

#include "levy/errors.hpp"
#include "levy/radial_measure.hpp"

namespace levy {

namespace {

bool point_atoms_symmetric(const AtomsMeasure& m) {
  std::map<double, double> plus, minus;
  for (const auto& a : m.atoms) {
    if (const auto* p = std::get_if<PointAtom>(&a)) {
      const double y = p->point[0];
      (y > 0 ? plus[y] : minus[-y]) += p->mass;
    }
  }
  if (plus.size() != minus.size()) return false;
  for (auto it = plus.begin(), jt = minus.begin(); it != plus.end(); ++it, ++jt) {
    if (it->first != jt->first) return false;
    if (std::fabs(it->second - jt->second) > 1e-14 * std::max(1.0, it->second)) return false;
  }
  return true;
}

}  // namespace

ModelSpec ModelSpec::create(int dim, std::vector<double> drift, std::vector<double> gaussian, MeasureSpec measure,
                            bool isotropic, std::string name) {
  if (dim < 1) throw ModelError("dim", "must be a positive integer");
  const auto n = static_cast<std::size_t>(dim);
  if (drift.empty()) drift.assign(n, 0.0);
  if (gaussian.empty()) gaussian.assign(n * n, 0.0);
  if (drift.size() != n) throw ModelError("drift", "expected " + std::to_string(n) + " entries");
  if (gaussian.size() != n * n) throw ModelError("gaussian", "expected " + std::to_string(n * n) + " entries (row-major)");
  for (double v : drift)
    if (!std::isfinite(v)) throw ModelError("drift", "entries must be finite");
  for (double v : gaussian)
    if (!std::isfinite(v)) throw ModelError("gaussian", "entries must be finite");

  ModelSpec m;
  m.dim_ = dim;

  Eigen::MatrixXd q(dim, dim);
  double qmax = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      q(i, j) = gaussian[static_cast<std::size_t>(i * dim + j)];
      qmax = std::max(qmax, std::fabs(q(i, j)));
    }
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < i; ++j)
      if (std::fabs(q(i, j) - q(j, i)) > 1e-12 * std::max(1.0, qmax)) throw ModelError("gaussian", "matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(q, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-12 * std::max(1.0, qmax))
    throw ModelError("gaussian", "matrix is not positive semi-definite");
  m.q_norm_ = std::max(0.0, eig.eigenvalues().maxCoeff());
  {
    const double d0 = q(0, 0);
    bool scalar = true;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        if (q(i, j) != (i == j ? d0 : 0.0)) scalar = false;
    m.q_scalar_ = scalar ? d0 : -1.0;
  }

  bool measure_radial = false;
  try {
    if (std::holds_alternative<NoJumps>(measure)) {
      m.radial_ = make_shell_radial(dim, {});
      measure_radial = true;
    } else if (const auto* at = std::get_if<AtomsMeasure>(&measure)) {
      std::vector<std::pair<double, double>> shells;
      bool all_shells = true;
      for (std::size_t i = 0; i < at->atoms.size(); ++i) {
        const std::string field = "measure.atoms[" + std::to_string(i) + "]";
        if (const auto* p = std::get_if<PointAtom>(&at->atoms[i])) {
          all_shells = false;
          if (p->point.size() != n) throw ModelError(field + ".point", "expected " + std::to_string(n) + " coordinates");
          double norm2 = 0.0;
          for (double v : p->point) {
            if (!std::isfinite(v)) throw ModelError(field + ".point", "coordinates must be finite");
            norm2 += v * v;
          }
          if (!(norm2 > 0.0)) throw ModelError(field + ".point", "atom at the origin");
          if (!(p->mass >= 0.0) || !std::isfinite(p->mass)) throw ModelError(field + ".mass", "must be finite and >= 0");
          shells.emplace_back(std::sqrt(norm2), p->mass);
        } else {
          const auto& s = std::get<ShellAtom>(at->atoms[i]);
          if (!(s.radius > 0.0) || !std::isfinite(s.radius)) throw ModelError(field + ".radius", "must be positive");
          if (!(s.mass >= 0.0) || !std::isfinite(s.mass)) throw ModelError(field + ".mass", "must be finite and >= 0");
          shells.emplace_back(s.radius, s.mass);
        }
      }
      if (all_shells || dim == 1) m.radial_ = make_shell_radial(dim, std::move(shells));
      measure_radial = all_shells || (dim == 1 && point_atoms_symmetric(*at));
    } else if (const auto* fam = std::get_if<RadialFamily>(&measure)) {
      if (!(fam->scale > 0.0) || !std::isfinite(fam->scale)) throw ModelError("measure.params.scale", "must be positive");
      m.radial_ = make_family_radial(dim, *fam);
      measure_radial = true;
    } else if (const auto* tab = std::get_if<RadialTable>(&measure)) {
      m.radial_ = make_table_radial(dim, *tab);
      measure_radial = true;
    } else if (const auto* sub = std::get_if<GammaSubordinator>(&measure)) {
      if (dim != 1) throw ModelError("measure.variant", "gamma_subordinator is one-dimensional");
      if (!(sub->scale > 0.0) || !std::isfinite(sub->scale)) throw ModelError("measure.params.scale", "must be positive");
      RadialFamily g;
      g.kind = RadialFamilyKind::gamma_type;
      g.scale = 0.5 * sub->scale;
      m.radial_ = make_family_radial(1, g);
    }
  } catch (const DomainError& e) {
    throw ModelError("measure", e.what());
  }

  if (m.radial_) {
    const double lm = m.radial_->moment(2, 1.0) + m.radial_->tail(1.0);
    if (!std::isfinite(lm) || lm < 0.0) throw ModelError("measure", "integral of min(1, |y|^2) is not finite");
  }

  if (isotropic) {
    for (double v : drift)
      if (v != 0.0) throw ModelError("isotropic", "an isotropic model needs zero drift");
    if (m.q_scalar_ < 0.0) throw ModelError("isotropic", "an isotropic model needs Q proportional to the identity");
    if (!measure_radial) throw ModelError("isotropic", "an isotropic model needs a radial measure");
  }

  m.drift_ = std::move(drift);
  m.gaussian_ = std::move(gaussian);
  m.measure_ = std::move(measure);
  m.isotropic_ = isotropic;
  m.measure_radial_ = measure_radial;
  m.name_ = std::move(name);
  return m;
}

bool ModelSpec::symmetric() const {
  for (double v : drift_)
    if (v != 0.0) return false;
  if (std::holds_alternative<GammaSubordinator>(measure_)) return false;
  if (const auto* at = std::get_if<AtomsMeasure>(&measure_)) {
    bool any_point = false;
    for (const auto& a : at->atoms) any_point |= std::holds_alternative<PointAtom>(a);
    if (!any_point) return true;
    if (dim_ == 1) return point_atoms_symmetric(*at);
    // Check y -> -y invariance of the point atoms.
    std::map<std::vector<double>, double> mass;
    for (const auto& a : at->atoms)
      if (const auto* p = std::get_if<PointAtom>(&a)) mass[p->point] += p->mass;
    for (const auto& [y, b] : mass) {
      std::vector<double> neg(y);
      for (double& v : neg) v = -v;
      auto it = mass.find(neg);
      if (it == mass.end() || std::fabs(it->second - b) > 1e-14 * std::max(1.0, b)) return false;
    }
  }
  return true;
}

}  // namespace levy
