#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "fsv/cir.hpp"
#include "fsv/errors.hpp"
#include "fsv/quadrature.hpp"
#include "fsv/specfun.hpp"

namespace fsv {

enum class ModelKind { Hsv, Svj32, FsvAj, FsvDj };

inline std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::Hsv: return "hsv";
    case ModelKind::Svj32: return "svj32";
    case ModelKind::FsvAj: return "fsv-aj";
    case ModelKind::FsvDj: return "fsv-dj";
  }
  return "?";
}

inline ModelKind model_kind_from_string(const std::string& s) {
  if (s == "hsv") return ModelKind::Hsv;
  if (s == "svj32") return ModelKind::Svj32;
  if (s == "fsv-aj") return ModelKind::FsvAj;
  if (s == "fsv-dj") return ModelKind::FsvDj;
  throw DomainError("unknown model kind '" + s + "'");
}

/// Full model parameter vector. alpha is the variance power in the index diffusion;
/// rho and gamma_diff never enter the VIX^2 maps (the VIX is a V-marginal functional)
/// and are carried for the simulation and estimation layers.
struct ModelParams {
  CirParams cir;
  double alpha = 0.5;
  double rho = -0.5;
  double gamma_diff = 1.0;
  double r = 0.0005;
  double lambda1 = 0.0;
  double mu1 = 0.1;
  double lambda2 = 0.0;
  double mu2 = -0.1;
  ModelKind kind = ModelKind::Hsv;

  void validate() const {
    cir.validate();
    if (!(alpha >= -0.5 && alpha <= 1.5)) throw DomainError("ModelParams: alpha in [-1/2, 3/2] required");
    if (!(rho >= -1.0 && rho <= 0.0)) throw DomainError("ModelParams: rho in [-1, 0] required");
    if (!(gamma_diff > 0.0)) throw DomainError("ModelParams: gamma_diff > 0 required");
    if (lambda1 < 0.0 || lambda2 < 0.0) throw DomainError("ModelParams: jump intensities must be >= 0");
    if (lambda1 > 0.0 && !(mu1 > 0.0 && mu1 < 1.0))
      throw DomainError("ModelParams: mu1 in (0,1) required when lambda1 > 0");
    if (lambda2 > 0.0 && !(mu2 < 0.0)) throw DomainError("ModelParams: mu2 < 0 required when lambda2 > 0");
    switch (kind) {
      case ModelKind::Hsv:
        if (alpha != 0.5 || lambda1 != 0.0 || lambda2 != 0.0)
          throw DomainError("HSV requires alpha = 1/2 and no jumps");
        break;
      case ModelKind::Svj32:
        if (alpha != -0.5) throw DomainError("3/2-SVJ requires alpha = -1/2");
        break;
      case ModelKind::FsvDj:
        if (lambda1 != 0.0) throw DomainError("FSV-DJ requires lambda1 = 0");
        break;
      case ModelKind::FsvAj:
        break;
    }
  }

  /// Feller / non-explosion / martingale diagnostics for this parameter set.
  /// Reported rather than enforced: the calibrated HSV column of the reference
  /// parameter sets violates both, yet prices fine (the map only needs the
  /// 2 kappa theta / sigma^2 > -2 alpha moment condition, checked at map build).
  ConditionReport conditions() const { return check_conditions(cir, alpha); }
};

/// Compensator means and the Theorem-3.2 jump offset H1.
struct JumpCompensation {
  double mu_tilde1;  // 1/(1-mu1) - 1
  double mu_tilde2;  // 1/(1-mu2) - 1
  double h1;         // 2 [l1 (mu~1 - mu1) + l2 (mu~2 - mu2)] >= 0
};

inline JumpCompensation jump_offset(const ModelParams& p) {
  JumpCompensation jc{0.0, 0.0, 0.0};
  double term1 = 0.0, term2 = 0.0;
  if (p.lambda1 > 0.0) {
    if (!(p.mu1 > 0.0 && p.mu1 < 1.0)) throw DomainError("jump_offset: mu1 in (0,1) required");
    jc.mu_tilde1 = p.mu1 / (1.0 - p.mu1);
    term1 = p.lambda1 * (p.mu1 * p.mu1 / (1.0 - p.mu1));  // mu~ - mu, cancellation-free
  } else if (p.mu1 > 0.0 && p.mu1 < 1.0) {
    jc.mu_tilde1 = p.mu1 / (1.0 - p.mu1);
  }
  if (p.lambda2 > 0.0) {
    if (!(p.mu2 < 0.0)) throw DomainError("jump_offset: mu2 < 0 required");
    jc.mu_tilde2 = p.mu2 / (1.0 - p.mu2);
    term2 = p.lambda2 * (p.mu2 * p.mu2 / (1.0 - p.mu2));
  } else if (p.mu2 < 0.0) {
    jc.mu_tilde2 = p.mu2 / (1.0 - p.mu2);
  }
  jc.h1 = 2.0 * (term1 + term2);
  return jc;
}

/// Quadrature grid and window for the VIX^2 moment integral.
struct VixConfig {
  int n_nodes = 64;
  double tau = 30.0 / 365.0;  // the 30-day log-contract window
};

/// Per-parameter-set cache of the deterministic map v -> VIX^2.
///
/// For every u-node of the Gauss-Legendre grid over (0, tau] the v-independent
/// pieces of ln E[V_u^{2 alpha} | V_0 = v] (or of E[V_u^{-1}] in the 3/2 case)
/// are precomputed, so one map evaluation costs n_nodes 1F1 calls. Immutable
/// after construction and shareable across threads.
class VixSquaredMap {
 public:
  explicit VixSquaredMap(const ModelParams& p, VixConfig cfg = {},
                         const SpecFunConfig& sf = default_specfun())
      : params_(p), cfg_(cfg), sf_(sf) {
    p.validate();
    if (cfg.n_nodes < 4) throw DomainError("VixConfig: n_nodes >= 4 required");
    if (!(cfg.tau > 0.0)) throw DomainError("VixConfig: tau > 0 required");
    offset_ = jump_offset(p).h1;
    if (p.kind == ModelKind::Hsv) {
      const double kt = p.cir.kappa * cfg.tau;
      a_hsv_ = -std::expm1(-kt) / kt;
      b_hsv_ = p.cir.theta * (1.0 - a_hsv_);
      return;
    }
    const double eta = (p.kind == ModelKind::Svj32) ? 1.0 : -2.0 * p.alpha;
    const double qb = p.cir.feller_ratio();
    if (!(eta < qb))
      throw DomainError("VixSquaredMap: moment condition eta < 2 kappa theta / sigma^2 violated");
    fa_ = qb - eta;
    fb_ = qb;
    const double kappa = p.cir.kappa, s2 = p.cir.sigma * p.cir.sigma;
    const double lg = log_gamma(fa_) - log_gamma(fb_);
    QuadNodes g = gauss_legendre(cfg.n_nodes, 0.0, cfg.tau);
    nodes_.reserve(cfg.n_nodes);
    for (int i = 0; i < cfg.n_nodes; ++i) {
      const double u = g.x[i];
      Node nd;
      nd.w = g.w[i];
      if (kappa * u < 1e-12) {
        nd.degenerate = true;
        nodes_.push_back(nd);
        continue;
      }
      const double s = 0.5 * kappa * u;
      const double lsinh = detail::log_sinh(s);
      nd.base = eta * std::log(kappa / s2) - qb * lsinh + kappa * kappa * p.cir.theta * u / s2 +
                (eta - qb) * (s - lsinh) + lg;
      nd.slope = (kappa / s2) * (1.0 - detail::coth(s));
      nd.zeta = 2.0 * kappa / (s2 * std::expm1(kappa * u));
      nodes_.push_back(nd);
    }
    eta_ = eta;
  }

  const ModelParams& params() const { return params_; }
  const VixConfig& config() const { return cfg_; }
  double jump_h1() const { return offset_; }

  /// VIX^2 in index-points^2 (the 100^2 scaling applied).
  double vix_squared(double v) const {
    if (!(v > 0.0)) throw DomainError("vix_squared: v > 0 required");
    if (params_.kind == ModelKind::Hsv) return 1e4 * (a_hsv_ * v + b_hsv_);
    double acc = 0.0;
    for (const Node& nd : nodes_) {
      double g;
      if (nd.degenerate) {
        g = std::pow(v, -eta_);
      } else {
        g = std::exp(nd.base + nd.slope * v + log_kummer_1f1(fa_, fb_, nd.zeta * v, sf_));
      }
      acc += nd.w * g;
    }
    return 1e4 * (offset_ + acc / cfg_.tau);
  }

  double vix(double v) const { return std::sqrt(vix_squared(v)); }

 private:
  struct Node {
    double w = 0.0;
    double base = 0.0;   // v-independent log piece
    double slope = 0.0;  // coefficient of v inside the exponential
    double zeta = 0.0;   // 1F1 argument scale
    bool degenerate = false;
  };

  ModelParams params_;
  VixConfig cfg_;
  SpecFunConfig sf_;
  double offset_ = 0.0;                // H1 (or G0)
  double a_hsv_ = 0.0, b_hsv_ = 0.0;   // HSV affine coefficients
  double fa_ = 0.0, fb_ = 0.0;         // 1F1 parameters
  double eta_ = 0.0;
  std::vector<Node> nodes_;
};

/// HSV closed form: VIX^2 = 100^2 (a V + b), a = (1-e^{-k tau})/(k tau).
inline double vix_squared_hsv(const ModelParams& p, double v, VixConfig cfg = {}) {
  if (p.kind != ModelKind::Hsv) throw ModelKindError("vix_squared_hsv: kind must be HSV");
  return VixSquaredMap(p, cfg).vix_squared(v);
}

/// 3/2-SVJ map: (1/tau) Int E[V_u^{-1}] du + G0, times 100^2.
inline double vix_squared_svj32(const ModelParams& p, double v, VixConfig cfg = {}) {
  if (p.kind != ModelKind::Svj32) throw ModelKindError("vix_squared_svj32: kind must be 3/2-SVJ");
  return VixSquaredMap(p, cfg).vix_squared(v);
}

/// Free-volatility map: 100^2 (H1 + Int_0^tau H2 du) with H2 tau = E[V_u^{2 alpha}].
inline double vix_squared_fsv(const ModelParams& p, double v, VixConfig cfg = {}) {
  if (p.kind != ModelKind::FsvAj && p.kind != ModelKind::FsvDj)
    throw ModelKindError("vix_squared_fsv: kind must be FSV-AJ or FSV-DJ");
  return VixSquaredMap(p, cfg).vix_squared(v);
}

/// Model-dispatched VIX level in index points.
inline double vix_level(const ModelParams& p, double v, VixConfig cfg = {}) {
  return VixSquaredMap(p, cfg).vix(v);
}

}  // namespace fsv
