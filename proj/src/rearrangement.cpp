#include "levy/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "levy/errors.hpp"
#include "levy/exponent.hpp"
#include "levy/inversion.hpp"
#include "levy/quadrature.hpp"
#include "levy/specfun.hpp"

namespace levy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxCells = std::size_t{1} << 24;

bool monotone_on_rays(const ModelSpec& model) {
  double prev = 0.0;
  for (int k = -60; k <= 100; ++k) {
    const double v = re_psi_radial(model, std::exp2(0.5 * k));
    if (v < prev * (1.0 - 1e-9)) return false;
    prev = std::max(prev, v);
  }
  return true;
}

// inf{s >= 0 : Re psi(s e_1) >= x} for a one-dimensional model, +inf when x is not reached.
double level_radius_1d(const ModelSpec& model, double x) {
  if (x <= 0.0) return 0.0;
  auto f = [&](double s) { return re_psi_radial(model, s); };
  double lo = 0.0, f_lo = 0.0;
  double hi = 1.0, f_hi = f(hi);
  if (f_hi >= x) {
    while (true) {
      const double s = 0.5 * hi;
      const double fs = f(s);
      if (fs < x || s < 1e-150) {
        lo = s;
        f_lo = fs;
        break;
      }
      hi = s;
      f_hi = fs;
    }
    if (f_lo >= x) return lo;
  } else {
    while (f_hi < x) {
      lo = hi;
      f_lo = f_hi;
      hi *= 2.0;
      if (hi > 1e145) return kInf;
      f_hi = f(hi);
    }
  }
  auto g = [&](double w) { return f(std::exp(w)) - x; };
  std::uintmax_t iters = 200;
  const auto br = boost::math::tools::toms748_solve(g, std::log(lo), std::log(hi), f_lo - x, f_hi - x,
                                                    boost::math::tools::eps_tolerance<double>(50), iters);
  double s = std::exp(br.second);
  for (int i = 0; i < 8 && f(s) < x; ++i) s = std::nextafter(s, kInf) * (1.0 + 4e-16);
  return s;
}

double level_radius(const ModelSpec& model, double x) {
  if (x <= 0.0) return 0.0;
  if (model.isotropic()) {
    try {
      return std::sqrt(g_inverse(model, x));
    } catch (const DomainError& e) {
      if (std::string(e.what()).find("attainable") != std::string::npos) return kInf;
      throw;
    }
  }
  return level_radius_1d(model, x);
}

double radial_nu(const ModelSpec& model, double x) {
  const double r = level_radius(model, x);
  if (!std::isfinite(r)) return kInf;
  return specfun::ball_volume(model.dim()) * std::pow(r, model.dim());
}

double radial_nu_inverse(const ModelSpec& model, double s) {
  if (s <= 0.0) return 0.0;
  const int n = model.dim();
  return re_psi_radial(model, std::pow(s / specfun::ball_volume(n), 1.0 / n));
}

int default_cells(int dim) { return dim == 1 ? (1 << 16) : 512; }

SublevelLattice lattice_on_box(const ModelSpec& model, double half_width, int cells) {
  SublevelLattice L;
  L.dim = model.dim();
  L.half_width = half_width;
  L.cells_per_axis = cells;
  L.cell_size = 2.0 * half_width / cells;
  L.cell_volume = std::pow(L.cell_size, L.dim);
  L.boundary_min = kInf;
  auto centre = [&](int i) { return -half_width + (i + 0.5) * L.cell_size; };
  if (L.dim == 1) {
    L.sorted.resize(static_cast<std::size_t>(cells));
    for (int i = 0; i < cells; ++i) {
      const double xi = centre(i);
      L.sorted[static_cast<std::size_t>(i)] = eval_re_psi(model, std::span<const double>(&xi, 1));
    }
    L.boundary_min = std::min(L.sorted.front(), L.sorted.back());
  } else {
    L.sorted.resize(static_cast<std::size_t>(cells) * static_cast<std::size_t>(cells));
    for (int i = 0; i < cells; ++i) {
      for (int j = 0; j < cells; ++j) {
        const double xi[2] = {centre(i), centre(j)};
        const double v = eval_re_psi(model, xi);
        L.sorted[static_cast<std::size_t>(i) * static_cast<std::size_t>(cells) + static_cast<std::size_t>(j)] = v;
        if (i == 0 || j == 0 || i == cells - 1 || j == cells - 1) L.boundary_min = std::min(L.boundary_min, v);
      }
    }
  }
  std::sort(L.sorted.begin(), L.sorted.end());
  return L;
}

}  // namespace

SublevelLattice sublevel_lattice_on_box(const ModelSpec& model, double half_width, int cells_per_axis) {
  const int n = model.dim();
  if (n > 2) throw DomainError("grid counting supports dimensions 1 and 2");
  if (!(half_width > 0.0)) throw DomainError("box half-width must be positive");
  const int cells = cells_per_axis > 0 ? cells_per_axis : default_cells(n);
  if (std::pow(static_cast<double>(cells), n) > static_cast<double>(kMaxCells))
    throw DomainError("grid memory cap exceeded");
  return lattice_on_box(model, half_width, cells);
}

const char* to_string(NuMethod m) { return m == NuMethod::radial_bisection ? "radial_bisection" : "grid_count"; }

double SublevelLattice::volume(double x) const {
  if (x < 0.0) return 0.0;
  if (x >= boundary_min) return kInf;
  const auto k = std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
  return cell_volume * static_cast<double>(k);
}

double SublevelLattice::inverse(double s, bool within_box) const {
  if (s <= 0.0) return 0.0;
  const double k = std::ceil(s / cell_volume * (1.0 - 1e-15));
  if (k > static_cast<double>(sorted.size())) throw DomainError("s beyond the counted range of the lattice");
  const double v = sorted[static_cast<std::size_t>(std::max(1.0, k)) - 1];
  if (within_box && v >= boundary_min) throw DomainError("s beyond the counted range of the lattice");
  return v;
}

SublevelLattice sublevel_lattice(const ModelSpec& model, double x_max, int cells_per_axis) {
  const int n = model.dim();
  if (n > 2) throw DomainError("grid counting supports dimensions 1 and 2");
  const int cells = cells_per_axis > 0 ? cells_per_axis : default_cells(n);
  if (std::pow(static_cast<double>(cells), n) > static_cast<double>(kMaxCells))
    throw DomainError("grid memory cap exceeded");
  const QuadraticMajorant qm = quadratic_majorant(model, 1.0);
  double B = 1.0;
  if (qm.c > 0.0 && x_max > qm.d) B = std::max(B, 1.5 * std::sqrt((x_max - qm.d) / qm.c));
  SublevelLattice L;
  for (int k = 0; k < 40; ++k) {
    L = lattice_on_box(model, B, cells);
    if (L.boundary_min > x_max) return L;
    B *= 2.0;
  }
  return L;
}

NuMethod nu_method(const ModelSpec& model) {
  if ((model.isotropic() || model.dim() == 1) && monotone_on_rays(model)) return NuMethod::radial_bisection;
  if (model.dim() <= 2) return NuMethod::grid_count;
  throw DomainError("sublevel measures need an isotropic monotone exponent in dimension above 2");
}

double nu_dist(const ModelSpec& model, double x) {
  if (!(x >= 0.0)) throw DomainError("nu_dist needs x >= 0");
  if (nu_method(model) == NuMethod::radial_bisection) return radial_nu(model, x);
  return sublevel_lattice(model, x).volume(x);
}

std::vector<double> nu_dist(const ModelSpec& model, const std::vector<double>& x) {
  std::vector<double> out(x.size());
  if (x.empty()) return out;
  for (double v : x)
    if (!(v >= 0.0)) throw DomainError("nu_dist needs x >= 0");
  if (nu_method(model) == NuMethod::radial_bisection) {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = radial_nu(model, x[i]);
  } else {
    const double top = *std::max_element(x.begin(), x.end());
    const SublevelLattice L = sublevel_lattice(model, std::isfinite(top) ? top : 1e300);
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = L.volume(x[i]);
  }
  return out;
}

double nu_inverse(const ModelSpec& model, double s) {
  if (!(s >= 0.0)) throw DomainError("nu_inverse needs s >= 0");
  if (s == 0.0) return 0.0;
  if (nu_method(model) == NuMethod::radial_bisection) return radial_nu_inverse(model, s);
  double x = 1.0;
  for (int k = 0; k < 60; ++k) {
    const SublevelLattice L = sublevel_lattice(model, x);
    const double vol = L.volume(x);
    if (vol >= s) return L.inverse(s);
    if (!std::isfinite(L.boundary_min) || L.boundary_min <= x) break;
    x *= 2.0;
  }
  throw DomainError("s beyond computed range");
}

double u_star(const ModelSpec& model, double t, double s) {
  if (!(t > 0.0)) throw DomainError("u_star needs t > 0");
  return std::exp(-t * nu_inverse(model, s));
}

double pt0_laplace(const ModelSpec& model, double t) {
  if (!(t > 0.0)) throw DomainError("pt0_laplace needs t > 0");
  const IntegrabilityProbe probe = probe_integrability(model, t);
  if (!probe.integrable) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "e^{-t Re psi} is not integrable at t=%g", t);
    throw Refusal("not integrable", buf);
  }
  const int n = model.dim();
  const double norm = std::pow(2.0 * M_PI, -n);
  if (nu_method(model) == NuMethod::grid_count) {
    const SublevelLattice L = sublevel_lattice(model, 40.0 / t);
    const double X = L.boundary_min;
    quad::KahanSum sum;
    std::size_t count = 0;
    for (double v : L.sorted) {
      if (v > X) break;
      sum.add(L.cell_volume * (std::exp(-t * v) - std::exp(-t * X)));
      ++count;
    }
    const double edge = L.cell_volume * static_cast<double>(count) * std::exp(-t * X);
    if (!std::isfinite(X) || edge > 1e-10 * sum.value())
      throw NumericalError("tail of nu grows too fast for the table range at this t", edge / sum.value());
    return norm * sum.value();
  }
  const double Vn = specfun::ball_volume(n);
  bool overflow = false;
  auto f = [&](double x) {
    const double r = level_radius(model, x);
    if (!std::isfinite(r)) {
      overflow = true;
      return 0.0;
    }
    return t * Vn * std::pow(r, n) * std::exp(-t * x);
  };
  // Dyadic panels towards the origin, where nu behaves like a power of x.
  quad::KahanSum sum;
  double err = 0.0;
  for (int k = -60; k < 0; ++k) {
    const quad::Result r = quad::gauss_kronrod(f, std::exp2(k), std::exp2(k + 1), 1e-12);
    sum.add(r.value);
    err += r.error;
  }
  const double scale = std::max(1.0, 1.0 / t);
  const quad::Result tail = quad::half_line_decaying(f, scale, 1e-12);
  if (scale > 1.0) {
    for (double a = 1.0; a < scale; a *= 2.0) {
      const quad::Result r = quad::gauss_kronrod(f, a, std::min(2.0 * a, scale), 1e-12);
      sum.add(r.value);
      err += r.error;
    }
  }
  sum.add(tail.value);
  err += tail.error;
  if (overflow || !tail.converged)
    throw NumericalError("tail of nu grows too fast for the table range at this t", err / std::fabs(sum.value()));
  if (err > 1e-8 * sum.value()) throw NumericalError("Laplace integral of nu did not converge", err / sum.value());
  return norm * sum.value();
}

double RearrangementTable::nu(double x) const {
  if (x <= 0.0) return 0.0;
  if (x > x_nodes.back() * (1.0 + 1e-14)) throw DomainError("x beyond computed range");
  if (x <= x_nodes.front()) {
    const double v0 = nu_values[0], v1 = nu_values[1];
    if (v0 > 0.0 && std::isfinite(v1) && v1 > v0) {
      const double p = std::log(v1 / v0) / std::log(x_nodes[1] / x_nodes[0]);
      return v0 * std::pow(x / x_nodes[0], p);
    }
    return v0 * x / x_nodes.front();
  }
  const auto it = std::lower_bound(x_nodes.begin(), x_nodes.end(), x);
  const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(it - x_nodes.begin()), x_nodes.size() - 1);
  if (x >= x_nodes[i]) return nu_values[i];
  const double xa = x_nodes[i - 1], xb = x_nodes[i];
  const double va = nu_values[i - 1], vb = nu_values[i];
  if (!std::isfinite(vb)) return va;
  if (va > 0.0 && vb > 0.0) return va * std::pow(vb / va, std::log(x / xa) / std::log(xb / xa));
  return va + (vb - va) * (x - xa) / (xb - xa);
}

double RearrangementTable::inverse(double s) const {
  if (s <= 0.0) return 0.0;
  const auto it = std::lower_bound(nu_values.begin(), nu_values.end(), s);
  if (it == nu_values.end()) throw DomainError("s beyond table range");
  const std::size_t i = static_cast<std::size_t>(it - nu_values.begin());
  if (i == 0) {
    const double v0 = nu_values[0], v1 = nu_values[1];
    if (v0 > 0.0 && std::isfinite(v1) && v1 > v0) {
      const double p = std::log(v1 / v0) / std::log(x_nodes[1] / x_nodes[0]);
      return x_nodes[0] * std::pow(s / v0, 1.0 / p);
    }
    return x_nodes[0] * s / v0;
  }
  const double xa = x_nodes[i - 1], xb = x_nodes[i];
  const double va = nu_values[i - 1], vb = nu_values[i];
  if (!std::isfinite(vb) || s >= vb) return xb;
  if (va > 0.0) return xa * std::pow(xb / xa, std::log(s / va) / std::log(vb / va));
  return xa + (xb - xa) * (s - va) / (vb - va);
}

RearrangementTable build_table(const ModelSpec& model, double x_max, int nodes, double x_min) {
  if (!(x_min > 0.0) || !(x_max > x_min) || nodes < 2) throw DomainError("table needs 0 < x_min < x_max and 2 nodes");
  RearrangementTable T;
  T.dim = model.dim();
  T.method = nu_method(model);
  T.x_nodes.resize(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i)
    T.x_nodes[static_cast<std::size_t>(i)] = x_min * std::pow(x_max / x_min, static_cast<double>(i) / (nodes - 1));
  T.x_nodes.back() = x_max;
  T.nu_values.resize(T.x_nodes.size());
  if (T.method == NuMethod::radial_bisection) {
    for (std::size_t i = 0; i < T.x_nodes.size(); ++i) T.nu_values[i] = radial_nu(model, T.x_nodes[i]);
  } else {
    const SublevelLattice L = sublevel_lattice(model, x_max);
    T.cell_size = L.cell_size;
    for (std::size_t i = 0; i < T.x_nodes.size(); ++i) T.nu_values[i] = L.volume(T.x_nodes[i]);
  }
  for (std::size_t i = 1; i < T.nu_values.size(); ++i) T.nu_values[i] = std::max(T.nu_values[i], T.nu_values[i - 1]);
  return T;
}

void write_csv(std::ostream& os, const RearrangementTable& table) {
  char buf[96];
  os << "# method=" << to_string(table.method) << "\n";
  os << "# dim=" << table.dim << "\n";
  std::snprintf(buf, sizeof buf, "# cell_size=%.17g\n", table.cell_size);
  os << buf << "x,nu\n";
  for (std::size_t i = 0; i < table.x_nodes.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", table.x_nodes[i], table.nu_values[i]);
    os << buf;
  }
}

}  // namespace levy
