#pragma once
// Physical couplings and jump-operator family descriptors.

#include <stdexcept>
#include <string>

namespace latgas {

struct HubbardParams {
  double J = 1.0;      // hopping amplitude
  double U = 0.0;      // on-site interaction
  double kappa = 1.0;  // dissipative rate
  double n = 1.0;      // mean filling per site
  double n0 = -1.0;    // condensate density; < 0 means "use n"

  double cond_density() const { return n0 >= 0 ? n0 : n; }

  void validate() const {
    if (J <= 0) throw std::invalid_argument("HubbardParams: J must be > 0");
    if (kappa <= 0) throw std::invalid_argument("HubbardParams: kappa must be > 0");
    if (U < 0) throw std::invalid_argument("HubbardParams: U must be >= 0");
    if (n <= 0) throw std::invalid_argument("HubbardParams: n must be > 0");
  }
};

enum class JumpKind { LinkBEC, MomentumBEC, LambdaV, EtaFermion };

inline const char* to_string(JumpKind k) {
  switch (k) {
    case JumpKind::LinkBEC: return "LinkBEC";
    case JumpKind::MomentumBEC: return "MomentumBEC";
    case JumpKind::LambdaV: return "LambdaV";
    case JumpKind::EtaFermion: return "EtaFermion";
  }
  return "?";
}

struct JumpFamily {
  JumpKind kind = JumpKind::LinkBEC;
  // LinkBEC / MomentumBEC
  double kappa = 1.0;
  // LambdaV: effective rates for the four per-link/per-vertex operators
  double kappa_lambda_plus = 1.0, kappa_lambda_minus = 1.0;
  double kappa_v_plus = 1.0, kappa_v_minus = 1.0;
  // EtaFermion: rates for the two operator families
  double kappa1 = 1.0, kappa2 = 1.0;

  void validate() const {
    auto chk = [](double r, const char* name) {
      if (r < 0) throw std::invalid_argument(std::string("JumpFamily: rate ") + name + " must be >= 0");
    };
    chk(kappa, "kappa");
    chk(kappa_lambda_plus, "kappa_lambda_plus");
    chk(kappa_lambda_minus, "kappa_lambda_minus");
    chk(kappa_v_plus, "kappa_v_plus");
    chk(kappa_v_minus, "kappa_v_minus");
    chk(kappa1, "kappa1");
    chk(kappa2, "kappa2");
  }
};

}  // namespace latgas
