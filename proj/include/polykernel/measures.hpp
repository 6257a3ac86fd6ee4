#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "polykernel/errors.hpp"
#include "polykernel/rational.hpp"
#include "polykernel/special.hpp"

// Rotation-invariant measures on the plane are described by the radial profile
// measure mu on [0, infinity): nu = (angular average) x mu(|z|^2). Everything
// the rest of the library needs from nu is the Stieltjes moment sequence
//   s_d = integral t^d dmu(t),
// its exact-rational counterpart when the parameters admit one, and the radius
// of the disc supporting the associated function space.

namespace polykernel {

enum class MeasureKind { BergmanWeight, FockWeight, DiscreteAtoms, RawMoments };

struct Atom {
  double position = 0.0;  // t >= 0, the squared radius of the mass circle
  double weight = 0.0;    // > 0
};

struct SupportRadius {
  double value = 0.0;        // radius of the disc D_s; may be +infinity
  bool approximate = false;  // true when estimated from a finite moment list
  bool is_finite() const { return std::isfinite(value); }
};

class MeasureSpec {
 public:
  // dmu(t) = (1-t)^alpha dt on [0,1], unnormalized: s_d =
  // Gamma(d+1)Gamma(alpha+1)/Gamma(d+alpha+2). Requires alpha > -1.
  static MeasureSpec bergman(double alpha) {
    require_alpha(alpha);
    MeasureSpec s;
    s.kind_ = MeasureKind::BergmanWeight;
    s.alpha_ = alpha;
    return s;
  }

  // dmu(t) = t^alpha e^{-t} dt / Gamma(alpha+1) on [0, infinity), normalized:
  // s_d = Gamma(alpha+d+1)/Gamma(alpha+1). Requires alpha > -1.
  static MeasureSpec fock(double alpha) {
    require_alpha(alpha);
    MeasureSpec s;
    s.kind_ = MeasureKind::FockWeight;
    s.alpha_ = alpha;
    return s;
  }

  // Finite atomic measure sum_k w_k delta_{t_k}: s_d = sum_k w_k t_k^d.
  // Positions must be >= 0 and pairwise distinct, weights > 0.
  static MeasureSpec atoms(std::vector<Atom> atoms) {
    if (atoms.empty()) {
      throw ParameterError("MeasureSpec::atoms: empty atom list");
    }
    for (const Atom& a : atoms) {
      if (!std::isfinite(a.position) || a.position < 0.0) {
        throw ParameterError("MeasureSpec::atoms: positions must be finite and >= 0");
      }
      if (!std::isfinite(a.weight) || a.weight <= 0.0) {
        throw ParameterError("MeasureSpec::atoms: weights must be finite and > 0");
      }
    }
    std::vector<Atom> sorted = std::move(atoms);
    std::sort(sorted.begin(), sorted.end(),
              [](const Atom& a, const Atom& b) { return a.position < b.position; });
    for (std::size_t k = 1; k < sorted.size(); ++k) {
      if (sorted[k].position == sorted[k - 1].position) {
        throw ParameterError("MeasureSpec::atoms: duplicate position " +
                             std::to_string(sorted[k].position));
      }
    }
    MeasureSpec s;
    s.kind_ = MeasureKind::DiscreteAtoms;
    s.atoms_ = std::move(sorted);
    return s;
  }

  // Black-box moment provider for d = 0 .. available-1. The optional exact
  // provider enables the rational backend for externally tabulated sequences.
  static MeasureSpec raw_moments(std::function<double(int)> provider, int available,
                                 std::function<Rational(int)> exact_provider = {}) {
    if (!provider) {
      throw ParameterError("MeasureSpec::raw_moments: null provider");
    }
    if (available < 1) {
      throw ParameterError("MeasureSpec::raw_moments: need at least one moment");
    }
    MeasureSpec s;
    s.kind_ = MeasureKind::RawMoments;
    s.raw_ = std::make_shared<RawData>(RawData{std::move(provider),
                                               std::move(exact_provider), available});
    return s;
  }

  MeasureKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  const std::vector<Atom>& atoms() const { return atoms_; }

  int available_moments() const {
    return kind_ == MeasureKind::RawMoments ? raw_->available
                                            : std::numeric_limits<int>::max();
  }

  int positive_atom_count() const {
    int n = 0;
    for (const Atom& a : atoms_) n += a.position > 0.0 ? 1 : 0;
    return n;
  }

  // s_d. Raw providers are validated on the fly: the sequence must stay
  // finite and strictly positive to be a Stieltjes moment sequence.
  double moment(int d) const {
    check_index(d);
    switch (kind_) {
      case MeasureKind::BergmanWeight:
        return std::exp(log_gamma(d + 1.0) + log_gamma(alpha_ + 1.0) -
                        log_gamma(d + alpha_ + 2.0));
      case MeasureKind::FockWeight:
        return std::exp(log_gamma(alpha_ + d + 1.0) - log_gamma(alpha_ + 1.0));
      case MeasureKind::DiscreteAtoms: {
        double acc = 0.0;
        for (const Atom& a : atoms_) {
          acc += a.weight * (d == 0 ? 1.0 : std::pow(a.position, d));
        }
        return acc;
      }
      case MeasureKind::RawMoments: {
        double v = raw_->provider(d);
        if (!std::isfinite(v) || v <= 0.0) {
          throw ParameterError("raw moment s_" + std::to_string(d) +
                               " is not finite and positive");
        }
        return v;
      }
    }
    throw ParameterError("MeasureSpec: invalid kind");
  }

  // ln s_d, stable for indices where s_d itself over- or underflows.
  double log_moment(int d) const {
    check_index(d);
    switch (kind_) {
      case MeasureKind::BergmanWeight:
        return log_gamma(d + 1.0) + log_gamma(alpha_ + 1.0) -
               log_gamma(d + alpha_ + 2.0);
      case MeasureKind::FockWeight:
        return log_gamma(alpha_ + d + 1.0) - log_gamma(alpha_ + 1.0);
      case MeasureKind::DiscreteAtoms: {
        // log-sum-exp against the dominant atom
        double best = -std::numeric_limits<double>::infinity();
        for (const Atom& a : atoms_) {
          if (a.position == 0.0 && d > 0) continue;
          double term = std::log(a.weight) +
                        (d == 0 ? 0.0 : d * std::log(a.position));
          best = std::max(best, term);
        }
        double acc = 0.0;
        for (const Atom& a : atoms_) {
          if (a.position == 0.0 && d > 0) continue;
          double term = std::log(a.weight) +
                        (d == 0 ? 0.0 : d * std::log(a.position));
          acc += std::exp(term - best);
        }
        return best + std::log(acc);
      }
      case MeasureKind::RawMoments:
        return std::log(moment(d));
    }
    throw ParameterError("MeasureSpec: invalid kind");
  }

  bool has_exact_moments() const {
    return kind_ != MeasureKind::RawMoments || static_cast<bool>(raw_->exact);
  }

  // Exact s_d when the backend applies. Bergman: s_d = d! / ((a+1)...(a+d+1)),
  // Fock: s_d = (a+1)...(a+d), both exact for any representable alpha; atom
  // data is dyadic-rational by construction.
  std::optional<Rational> exact_moment(int d) const {
    check_index(d);
    switch (kind_) {
      case MeasureKind::BergmanWeight: {
        Rational a = rational_from_double(alpha_);
        Rational num = 1;
        for (int j = 2; j <= d; ++j) num *= j;  // d!
        Rational den = 1;
        for (int j = 1; j <= d + 1; ++j) den *= a + j;
        return num / den;
      }
      case MeasureKind::FockWeight: {
        Rational a = rational_from_double(alpha_);
        Rational acc = 1;
        for (int j = 1; j <= d; ++j) acc *= a + j;
        return acc;
      }
      case MeasureKind::DiscreteAtoms: {
        Rational acc = 0;
        for (const Atom& at : atoms_) {
          Rational t = rational_from_double(at.position);
          Rational p = 1;
          for (int j = 0; j < d; ++j) p *= t;
          acc += rational_from_double(at.weight) * p;
        }
        return acc;
      }
      case MeasureKind::RawMoments:
        if (raw_->exact) return raw_->exact(d);
        return std::nullopt;
    }
    return std::nullopt;
  }

  std::string describe() const {
    std::ostringstream os;
    switch (kind_) {
      case MeasureKind::BergmanWeight:
        os << "bergman(alpha=" << alpha_ << ")";
        break;
      case MeasureKind::FockWeight:
        os << "fock(alpha=" << alpha_ << ")";
        break;
      case MeasureKind::DiscreteAtoms:
        os << "atoms(";
        for (std::size_t k = 0; k < atoms_.size(); ++k) {
          os << (k ? "," : "") << atoms_[k].position << ":" << atoms_[k].weight;
        }
        os << ")";
        break;
      case MeasureKind::RawMoments:
        os << "raw(" << raw_->available << " moments)";
        break;
    }
    return os.str();
  }

 private:
  struct RawData {
    std::function<double(int)> provider;
    std::function<Rational(int)> exact;
    int available = 0;
  };

  static void require_alpha(double alpha) {
    if (!std::isfinite(alpha) || alpha <= -1.0) {
      throw ParameterError("measure parameter alpha must be finite and > -1");
    }
  }

  void check_index(int d) const {
    if (d < 0) {
      throw ParameterError("moment index must be >= 0");
    }
    if (kind_ == MeasureKind::RawMoments && d >= raw_->available) {
      throw ParameterError("moment index " + std::to_string(d) +
                           " beyond the " + std::to_string(raw_->available) +
                           " provided moments");
    }
  }

  MeasureKind kind_ = MeasureKind::BergmanWeight;
  double alpha_ = 0.0;
  std::vector<Atom> atoms_;
  std::shared_ptr<RawData> raw_;
};

inline double moment(const MeasureSpec& s, int d) { return s.moment(d); }

inline double shifted_moment(const MeasureSpec& s, int d, int j) {
  if (j < 0) throw ParameterError("shifted_moment: shift must be >= 0");
  return s.moment(d + j);
}

// Radius of the disc carrying the function space: lim s_d^{1/(2d)}, which is
// sqrt(sup supp mu). Exact for the built-in kinds; estimated from the tail of
// the available list for raw sequences.
inline SupportRadius support_radius(const MeasureSpec& s) {
  switch (s.kind()) {
    case MeasureKind::BergmanWeight:
      return {1.0, false};
    case MeasureKind::FockWeight:
      return {std::numeric_limits<double>::infinity(), false};
    case MeasureKind::DiscreteAtoms: {
      double tmax = 0.0;
      for (const Atom& a : s.atoms()) tmax = std::max(tmax, a.position);
      return {std::sqrt(tmax), false};
    }
    case MeasureKind::RawMoments: {
      constexpr int kMinMoments = 8;  // below this the tail tells us nothing
      int avail = s.available_moments();
      if (avail < kMinMoments) {
        throw EstimationError(
            "support radius estimation needs at least " +
            std::to_string(kMinMoments) + " moments, have " +
            std::to_string(avail));
      }
      int d = std::min(avail - 1, 256);
      return {std::exp(s.log_moment(d) / (2.0 * d)), true};
    }
  }
  throw ParameterError("support_radius: invalid kind");
}

// View of a measure as the bare moment sequence contract: float values always,
// exact rationals when the parameters admit them.
class MomentSequence {
 public:
  explicit MomentSequence(MeasureSpec spec) : spec_(std::move(spec)) {}

  double operator()(int d) const { return spec_.moment(d); }
  double log_value(int d) const { return spec_.log_moment(d); }
  bool has_exact() const { return spec_.has_exact_moments(); }
  std::optional<Rational> exact(int d) const { return spec_.exact_moment(d); }
  const MeasureSpec& spec() const { return spec_; }

 private:
  MeasureSpec spec_;
};

}  // namespace polykernel
