#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "complexpt.hpp"

namespace expcrit {

enum class SequenceKind {
  arithmetic,
  perturbed_integers,
  lacunary,
  sector,
  explicit_points
};

const char* to_string(SequenceKind k);

// lambda_k = offset + step*(k-1); with symmetric=true the points come in
// +/- pairs: +v_1, -v_1, +v_2, -v_2, ...
struct ArithmeticParams {
  ComplexPoint offset{1.0, 0.0};
  double step = 1.0;
  bool symmetric = false;
};

// lambda_k = k + amplitude*(-1)^k / k^power (real)
struct PerturbedIntegersParams {
  double amplitude = 0.5;
  double power = 2.0;
};

// lambda_k = scale * base^k (real)
struct LacunaryParams {
  double base = 2.0;
  double scale = 1.0;
};

// lambda_k = law_scale * k^law_power * e^{i*angle}, angle in (0, pi/2]
struct SectorParams {
  double angle = 0.0;
  double law_power = 2.0;
  double law_scale = 1.0;
};

using GeneratorParams = std::variant<ArithmeticParams, PerturbedIntegersParams,
                                     LacunaryParams, SectorParams>;

// Closed-form continuation of the sequence beyond the stored truncation.
// Tail sums used by the criteria are bounded here, per generator kind.
class TailDescriptor {
 public:
  TailDescriptor(SequenceKind kind, GeneratorParams params);

  SequenceKind kind() const { return kind_; }
  const GeneratorParams& params() const { return params_; }

  ComplexPoint point_at(std::size_t k) const;  // 1-based

  struct TailBound {
    enum class Kind { exact_zero, closed_form, divergent, unknown };
    Kind kind = Kind::unknown;
    double value = 0.0;
  };

  // bound on sum_{k>n} |Im 1/lambda_k|
  TailBound im_inv_tail(std::size_t n) const;

  // bound on sum_{k>n} |Im lambda_k| / dist(lambda_k, [-R,R])^2
  // (Poisson-kernel sup bound for the functional's omitted terms)
  TailBound poisson_kernel_tail(std::size_t n, double support_radius) const;

 private:
  SequenceKind kind_;
  GeneratorParams params_;
};

// Immutable finite truncation of a point sequence, ordered by increasing
// modulus (ties by argument), with optional closed-form tail.
class PointSequence {
 public:
  static PointSequence generate(SequenceKind kind, const GeneratorParams& params,
                                std::size_t count);
  static PointSequence from_points(std::vector<ComplexPoint> points);

  const std::vector<ComplexPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  const std::optional<TailDescriptor>& tail() const { return tail_; }
  const std::vector<std::string>& notes() const { return notes_; }
  double min_modulus() const;

  // Replace finitely many stored points (1-based indices).  The verdict of
  // any downstream classification transfers unchanged; a note records the
  // replacement.  Shifting a point onto 0 is rejected.
  PointSequence normalize_shift(const std::map<std::size_t, ComplexPoint>& shifts) const;

 private:
  PointSequence() = default;
  void validate_and_sort(bool require_sorted_emission);

  std::vector<ComplexPoint> points_;
  std::optional<TailDescriptor> tail_;
  std::vector<std::string> notes_;
};

struct DiskRegion {
  ComplexPoint center;
  double radius = 0.0;
};
struct RectRegion {
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
};
using Region = std::variant<DiskRegion, RectRegion>;

class CountingMeasure {
 public:
  explicit CountingMeasure(PointSequence seq) : seq_(std::move(seq)) {}
  const PointSequence& backing() const { return seq_; }
  std::size_t count_in(const Region& region) const;

 private:
  PointSequence seq_;
};

}  // namespace expcrit
