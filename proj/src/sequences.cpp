#include "sequences.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace expcrit {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::string index_msg(const char* what, std::size_t k) {
  return std::string(what) + " at index " + std::to_string(k);
}

ComplexPoint generator_point(SequenceKind kind, const GeneratorParams& params,
                             std::size_t k) {
  switch (kind) {
    case SequenceKind::arithmetic: {
      const auto& p = std::get<ArithmeticParams>(params);
      if (!p.symmetric) {
        return {p.offset.re + p.step * static_cast<double>(k - 1), p.offset.im};
      }
      const std::size_t j = (k + 1) / 2;
      const double sgn = (k % 2 == 1) ? 1.0 : -1.0;
      // + 0.0 keeps the imaginary part's zero unsigned
      return {sgn * (p.offset.re + p.step * static_cast<double>(j - 1)),
              sgn * p.offset.im + 0.0};
    }
    case SequenceKind::perturbed_integers: {
      const auto& p = std::get<PerturbedIntegersParams>(params);
      const double kk = static_cast<double>(k);
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      return {kk + p.amplitude * sign / std::pow(kk, p.power), 0.0};
    }
    case SequenceKind::lacunary: {
      const auto& p = std::get<LacunaryParams>(params);
      return {p.scale * std::pow(p.base, static_cast<double>(k)), 0.0};
    }
    case SequenceKind::sector: {
      const auto& p = std::get<SectorParams>(params);
      const double m = p.law_scale * std::pow(static_cast<double>(k), p.law_power);
      return {m * std::cos(p.angle), m * std::sin(p.angle)};
    }
    case SequenceKind::explicit_points:
      break;
  }
  throw std::logic_error("generator_point: explicit sequences have no generator");
}

void validate_params(SequenceKind kind, const GeneratorParams& params) {
  switch (kind) {
    case SequenceKind::arithmetic: {
      const auto& p = std::get<ArithmeticParams>(params);
      require_finite(p.offset, "arithmetic offset");
      if (!(p.step > 0) || !std::isfinite(p.step))
        throw std::invalid_argument("arithmetic: step must be > 0");
      return;
    }
    case SequenceKind::perturbed_integers: {
      const auto& p = std::get<PerturbedIntegersParams>(params);
      if (!(p.amplitude >= 0) || !std::isfinite(p.amplitude))
        throw std::invalid_argument("perturbed_integers: amplitude must be >= 0");
      if (!(p.power > 0))
        throw std::invalid_argument("perturbed_integers: power must be > 0");
      return;
    }
    case SequenceKind::lacunary: {
      const auto& p = std::get<LacunaryParams>(params);
      if (!(p.base > 1))
        throw std::invalid_argument("lacunary: base must be > 1");
      if (p.scale == 0 || !std::isfinite(p.scale))
        throw std::invalid_argument("lacunary: scale must be nonzero");
      return;
    }
    case SequenceKind::sector: {
      const auto& p = std::get<SectorParams>(params);
      if (!(p.angle > 0) || !(p.angle <= kPi / 2))
        throw std::invalid_argument("sector: angle must lie in (0, pi/2]");
      if (!(p.law_power > 0))
        throw std::invalid_argument("sector: law_power must be > 0");
      if (!(p.law_scale > 0))
        throw std::invalid_argument("sector: law_scale must be > 0");
      return;
    }
    case SequenceKind::explicit_points:
      return;
  }
}

// explicit head of a tail sum plus an integral-test remainder
struct TailAccum {
  double value = 0.0;
  bool ok = true;
};

}  // namespace

const char* to_string(SequenceKind k) {
  switch (k) {
    case SequenceKind::arithmetic: return "arithmetic";
    case SequenceKind::perturbed_integers: return "perturbed_integers";
    case SequenceKind::lacunary: return "lacunary";
    case SequenceKind::sector: return "sector";
    case SequenceKind::explicit_points: return "explicit";
  }
  return "?";
}

TailDescriptor::TailDescriptor(SequenceKind kind, GeneratorParams params)
    : kind_(kind), params_(std::move(params)) {
  if (kind_ == SequenceKind::explicit_points)
    throw std::invalid_argument("explicit sequences carry no tail descriptor");
  validate_params(kind_, params_);
}

ComplexPoint TailDescriptor::point_at(std::size_t k) const {
  if (k == 0) throw std::invalid_argument("point_at: indices are 1-based");
  return generator_point(kind_, params_, k);
}

TailDescriptor::TailBound TailDescriptor::im_inv_tail(std::size_t n) const {
  TailBound out;
  switch (kind_) {
    case SequenceKind::perturbed_integers:
    case SequenceKind::lacunary: {
      out.kind = TailBound::Kind::exact_zero;
      return out;
    }
    case SequenceKind::arithmetic: {
      const auto& p = std::get<ArithmeticParams>(params_);
      if (p.offset.im == 0.0) {
        out.kind = TailBound::Kind::exact_zero;
        return out;
      }
      // |Im 1/lambda_k| = |Im offset| / |lambda_k|^2, |lambda_k| growing
      // linearly; explicit head, then integral test on (step*t - A)^-2.
      const double im = std::fabs(p.offset.im);
      const double A = p.offset.modulus();
      const std::size_t kHead = 4096;
      double head = 0.0;
      for (std::size_t k = n + 1; k <= n + kHead; ++k) {
        const ComplexPoint q = point_at(k);
        head += std::fabs(q.im) / (q.re * q.re + q.im * q.im);
      }
      const std::size_t k0 = n + kHead;
      const std::size_t j0 = p.symmetric ? (k0 / 2) : k0;  // pair index
      const double per = p.symmetric ? 2.0 : 1.0;
      const double base = p.step * static_cast<double>(j0) - A;
      if (base <= 0) {
        out.kind = TailBound::Kind::unknown;
        return out;
      }
      out.kind = TailBound::Kind::closed_form;
      out.value = head + per * im / (p.step * base);
      return out;
    }
    case SequenceKind::sector: {
      const auto& p = std::get<SectorParams>(params_);
      // |Im 1/lambda_k| = sin(angle) / (law_scale * k^law_power)
      if (p.law_power <= 1.0) {
        out.kind = TailBound::Kind::divergent;
        return out;
      }
      const double c = std::sin(p.angle) / p.law_scale;
      const double nn = static_cast<double>(n);
      out.kind = TailBound::Kind::closed_form;
      out.value = c * std::pow(nn, 1.0 - p.law_power) / (p.law_power - 1.0);
      return out;
    }
    case SequenceKind::explicit_points:
      break;
  }
  out.kind = TailBound::Kind::unknown;
  return out;
}

TailDescriptor::TailBound TailDescriptor::poisson_kernel_tail(
    std::size_t n, double support_radius) const {
  TailBound out;
  const double R = support_radius;
  switch (kind_) {
    case SequenceKind::perturbed_integers:
    case SequenceKind::lacunary: {
      out.kind = TailBound::Kind::exact_zero;
      return out;
    }
    case SequenceKind::arithmetic: {
      const auto& p = std::get<ArithmeticParams>(params_);
      if (p.offset.im == 0.0) {
        out.kind = TailBound::Kind::exact_zero;
        return out;
      }
      const double im = std::fabs(p.offset.im);
      const std::size_t kHead = 4096;
      double head = 0.0;
      for (std::size_t k = n + 1; k <= n + kHead; ++k) {
        const ComplexPoint q = point_at(k);
        const double dre = std::max(0.0, std::fabs(q.re) - R);
        head += std::fabs(q.im) / (dre * dre + q.im * q.im);
      }
      const std::size_t k0 = n + kHead;
      const std::size_t j0 = p.symmetric ? (k0 / 2) : k0;
      const double per = p.symmetric ? 2.0 : 1.0;
      const double base = p.step * static_cast<double>(j0) - p.offset.modulus() - R;
      if (base <= 0) {
        out.kind = TailBound::Kind::unknown;
        return out;
      }
      out.kind = TailBound::Kind::closed_form;
      out.value = head + per * im / (p.step * base);
      return out;
    }
    case SequenceKind::sector: {
      const auto& p = std::get<SectorParams>(params_);
      if (p.law_power <= 1.0) {
        out.kind = TailBound::Kind::divergent;
        return out;
      }
      const double sina = std::sin(p.angle);
      // explicit head until |lambda_k| >= 2R, where
      // |Im lambda|/(|lambda|-R)^2 <= 4 sin(angle)/|lambda|
      double head = 0.0;
      std::size_t k = n + 1;
      const std::size_t kHeadMax = n + 1'000'000;
      for (; k <= kHeadMax; ++k) {
        const ComplexPoint q = point_at(k);
        const double m = q.modulus();
        if (m >= 2.0 * R) break;
        const double dist2 = std::max(m - R, 0.0) * std::max(m - R, 0.0);
        if (dist2 == 0.0) {
          out.kind = TailBound::Kind::unknown;
          return out;
        }
        head += std::fabs(q.im) / dist2;
      }
      if (k > kHeadMax) {
        out.kind = TailBound::Kind::unknown;
        return out;
      }
      const double kk = static_cast<double>(k - 1);
      out.kind = TailBound::Kind::closed_form;
      out.value = head + 4.0 * sina / p.law_scale *
                             std::pow(std::max(kk, 1.0), 1.0 - p.law_power) /
                             (p.law_power - 1.0);
      return out;
    }
    case SequenceKind::explicit_points:
      break;
  }
  out.kind = TailBound::Kind::unknown;
  return out;
}

void PointSequence::validate_and_sort(bool require_sorted_emission) {
  if (points_.empty())
    throw std::invalid_argument("point sequence needs at least one point");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    require_finite(points_[i], index_msg("point", i + 1));
    if (points_[i].is_zero())
      throw std::invalid_argument(index_msg("zero point produced", i + 1));
  }
  if (std::is_sorted(points_.begin(), points_.end(), ModulusArgLess{})) return;
  if (require_sorted_emission)
    throw std::invalid_argument(
        "generator must emit points in stored order (increasing modulus) "
        "for the tail continuation to stay index-consistent");
  std::sort(points_.begin(), points_.end(), ModulusArgLess{});
}

PointSequence PointSequence::generate(SequenceKind kind,
                                      const GeneratorParams& params,
                                      std::size_t count) {
  if (kind == SequenceKind::explicit_points)
    throw std::invalid_argument("use from_points for explicit sequences");
  if (count < 1) throw std::invalid_argument("generate: count must be >= 1");
  validate_params(kind, params);

  PointSequence seq;
  seq.points_.reserve(count);
  for (std::size_t k = 1; k <= count; ++k)
    seq.points_.push_back(generator_point(kind, params, k));
  seq.tail_ = TailDescriptor(kind, params);
  seq.validate_and_sort(/*require_sorted_emission=*/true);

  // no finite limit point: sampled escape check on tail indices
  double prev = seq.points_.back().modulus();
  for (std::size_t k = 2 * count + 2; k <= 32 * count + 32; k *= 2) {
    const double m = seq.tail_->point_at(k).modulus();
    if (!(m > prev))
      throw std::invalid_argument("generator moduli fail to escape to infinity");
    prev = m;
  }
  return seq;
}

PointSequence PointSequence::from_points(std::vector<ComplexPoint> points) {
  PointSequence seq;
  seq.points_ = std::move(points);
  seq.validate_and_sort(/*require_sorted_emission=*/false);
  return seq;
}

double PointSequence::min_modulus() const {
  return points_.front().modulus();  // stored order starts at the smallest
}

PointSequence PointSequence::normalize_shift(
    const std::map<std::size_t, ComplexPoint>& shifts) const {
  if (shifts.empty()) return *this;
  PointSequence out = *this;
  for (const auto& [idx, p] : shifts) {
    if (idx < 1 || idx > out.points_.size())
      throw std::invalid_argument(index_msg("shift index out of range", idx));
    require_finite(p, index_msg("shift target", idx));
    if (p.is_zero())
      throw std::invalid_argument(index_msg("shift would place a point at 0", idx));
    out.points_[idx - 1] = p;
    out.notes_.push_back("shifted index " + std::to_string(idx));
  }
  std::sort(out.points_.begin(), out.points_.end(), ModulusArgLess{});
  out.notes_.push_back(
      "finite shift: classification verdicts transfer unchanged");
  return out;
}

std::size_t CountingMeasure::count_in(const Region& region) const {
  std::size_t n = 0;
  if (const auto* d = std::get_if<DiskRegion>(&region)) {
    require_finite(d->center, "disk center");
    if (!(d->radius >= 0) || !std::isfinite(d->radius))
      throw std::invalid_argument("disk radius must be finite and >= 0");
    for (const ComplexPoint& p : seq_.points()) {
      if (std::hypot(p.re - d->center.re, p.im - d->center.im) <= d->radius) ++n;
    }
  } else {
    const auto& r = std::get<RectRegion>(region);
    if (!std::isfinite(r.xmin) || !std::isfinite(r.xmax) ||
        !std::isfinite(r.ymin) || !std::isfinite(r.ymax))
      throw std::invalid_argument("rectangle bounds must be finite");
    for (const ComplexPoint& p : seq_.points()) {
      if (p.re >= r.xmin && p.re <= r.xmax && p.im >= r.ymin && p.im <= r.ymax)
        ++n;
    }
  }
  return n;
}

}  // namespace expcrit
