#pragma once

#include <optional>
#include <string_view>

#include "timelike/body.hpp"

namespace timelike {

enum class ContextKind { funk, hilbert, spherical_hilbert, projective_desitter };
std::string_view to_string(ContextKind kind);
ContextKind context_kind_from_string(std::string_view name);

/// Minimum certified gap between the past and future bodies of a Hilbert
/// context.
inline constexpr double kDisjointnessGap = 1e-6;

/// A Funk context (one body) or a Hilbert context with an ordered pair of
/// past body K1 and future body K2. Projective de Sitter contexts carry K1
/// and use K2 = -K1.
class TimelikeContext {
 public:
  static TimelikeContext funk(ConvexBody body);
  static TimelikeContext hilbert(ConvexBody past, ConvexBody future);
  static TimelikeContext spherical_hilbert(ConvexBody past, ConvexBody future);
  static TimelikeContext projective_desitter(ConvexBody past);

  ContextKind kind() const { return kind_; }
  const Chart& chart() const { return future_.chart(); }
  bool is_funk() const { return kind_ == ContextKind::funk; }

  /// The single body of a Funk context (same as future()).
  const ConvexBody& body() const { return future_; }
  const ConvexBody& future() const { return future_; }
  const ConvexBody& past() const;

 private:
  TimelikeContext(ContextKind kind, ConvexBody future, std::optional<ConvexBody> past)
      : kind_(kind), future_(std::move(future)), past_(std::move(past)) {}

  ContextKind kind_;
  ConvexBody future_;
  std::optional<ConvexBody> past_;
};

enum class PairClass { timelike, null, unrelated, coincident };
std::string_view to_string(PairClass c);

/// Hit record for p < q with respect to a single body: q strictly between p
/// and the transversal first hit of the ray p -> q.
struct OrderWitness {
  GeodesicRay ray;
  RayHit hit;
  double t_q = 0.0;
};

/// Body-level order test shared by the Funk and Hilbert predicates. Requires
/// p and q exterior; returns nothing when p is not before q.
std::optional<OrderWitness> body_order(const ConvexBody& body, const Vector& p, const Vector& q);

bool funk_precedes(const TimelikeContext& ctx, const Vector& p, const Vector& q);
bool inclusion_precedes(const TimelikeContext& ctx, const Vector& p, const Vector& q);
bool hilbert_precedes(const TimelikeContext& ctx, const Vector& p, const Vector& q);

/// Dispatches on the context kind.
bool precedes(const TimelikeContext& ctx, const Vector& p, const Vector& q);

/// Projective de Sitter only: the great circle through p and q touches K1
/// (and so -K1) tangentially within 1e-9.
bool is_null_pair(const TimelikeContext& ctx, const Vector& p, const Vector& q);

PairClass classify_pair(const TimelikeContext& ctx, const Vector& p, const Vector& q);

/// Diagnostic for compact bodies: the ray p -> q hits the body transversally
/// (q is inside the literal cone from p) but q is at or beyond the hit.
bool cone_without_segment(const ConvexBody& body, const Vector& p, const Vector& q);

}  // namespace timelike
