#pragma once

#include <optional>
#include <string>
#include <vector>

#include "levy/exponent.hpp"
#include "levy/model.hpp"

namespace levy {

enum class Verdict { diverges, bounded, vanishes, inconclusive };

const char* to_string(Verdict v);

struct KRange {
  int lo = 4;
  int hi = 40;
};

struct VerdictRule {
  int window = 8;
  double diverge_floor = 10.0;
  double vanish_ceiling = 0.1;
  double flat_slope = 0.05;
};

// Liminf estimate of a quotient against a threshold such as n/t.
struct ThresholdCompare {
  double t = 0.0;
  double threshold = 0.0;
  double estimate = 0.0;
  bool pass = false;
};

// Trailing statistics of a subsequence of the probe grid.
struct Trend {
  std::string label;
  double trailing_min = 0.0;
  double trailing_max = 0.0;
  double slope = 0.0;
  Verdict verdict = Verdict::inconclusive;
};

// Values of a growth functional at xi_k = scale 2^k or eps_k = 2^{-k}. The slope is taken
// against ln xi or ln(1/eps), so growth towards the limit is always a positive slope.
struct LimitReport {
  std::string functional;
  std::string variable;
  std::vector<int> k;
  std::vector<double> probe_grid;
  std::vector<double> values;
  double trailing_min = 0.0;
  double trailing_max = 0.0;
  double slope = 0.0;
  Verdict verdict = Verdict::inconclusive;
  std::optional<ThresholdCompare> threshold_compare;
  // Even and odd k.
  std::vector<Trend> subsequences;
  std::vector<std::string> warnings;
};

// Fills the trailing statistics and verdicts from k, probe_grid and values.
void summarize(LimitReport& r, const VerdictRule& rule = {});

// Re psi(xi) / ln(1 + |xi|); the minimum over the direction set for anisotropic models.
LimitReport hw_functional(const ModelSpec& model, KRange k, std::optional<double> t = std::nullopt,
                          double scale = 1.0, const VerdictRule& rule = {});

// int_{|y| <= eps} |y|^2 nu(dy) / (eps^2 |ln eps|).
LimitReport kallenberg_functional(const ModelSpec& model, KRange k, const VerdictRule& rule = {});

// nu(|y| > eps) / |ln eps|.
LimitReport tail_mass_functional(const ModelSpec& model, KRange k, const VerdictRule& rule = {});

// (Re psi)_*(xi) / ln(1 + |xi|) with (Re psi)_*(xi) = nu^{-1}(V_n |xi|^n).
LimitReport hw_star_functional(const ModelSpec& model, KRange k, double scale = 1.0, const VerdictRule& rule = {});

// Re psi(xi) / ln(1 + phi(xi)).
LimitReport hw_phi_functional(const ModelSpec& model, const Symbol& phi, KRange k, double scale = 1.0,
                              const VerdictRule& rule = {});

// Re psi itself at xi = 2^k and 2^k 2 pi (minimum of both, over the direction set).
LimitReport re_psi_growth(const ModelSpec& model, KRange k, const VerdictRule& rule = {});

struct TimeVerdict {
  double t = 0.0;
  ThresholdCompare hw;
  bool probe_integrable = false;
  double probe_exponent = 0.0;
  std::string statement;
};

struct Classification {
  std::string verdict;
  LimitReport hw;
  LimitReport re_psi;
  std::vector<TimeVerdict> per_t;
  bool isotropic_monotone = false;
  std::vector<std::string> notes;
};

Classification classify(const ModelSpec& model, const std::vector<double>& t_list, KRange k = {},
                        const VerdictRule& rule = {});

}  // namespace levy
