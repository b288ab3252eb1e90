#pragma once

#include <optional>
#include <vector>

#include "softfoot/common.hpp"

namespace softfoot::contact {

/// Reference plane of a contact region. Sample positions are 2-D coordinates
/// in the (tangent1, tangent2) basis; tractions are expressed in the contact
/// frame (x along the normal, y/z along the tangents).
struct ContactPlane {
  Vec3 origin = Vec3::Zero();
  Vec3 normal = Vec3::UnitZ();
  Vec3 tangent1 = Vec3::UnitX();
  Vec3 tangent2 = Vec3::UnitY();

  /// Builds an orthonormal frame from `normal` (tangents chosen
  /// deterministically from the least-aligned coordinate axis).
  static ContactPlane from_normal(const Vec3& origin, const Vec3& normal);

  Vec3 to_world(const Vec2& p) const { return origin + p.x() * tangent1 + p.y() * tangent2; }
  Vec3 traction_to_world(const Vec3& t) const {
    return t.x() * normal + t.y() * tangent1 + t.z() * tangent2;
  }
};

/// One quadrature sample of the traction distribution.
/// traction.x() is the pressure (normal) component, y/z are friction.
struct TractionSample {
  Vec2 position = Vec2::Zero();   // [m], plane coordinates
  Vec3 traction = Vec3::Zero();   // [N/m^2], contact frame
  double area_weight = 0.0;       // [m^2]
};

/// Discretized traction field over a planar contact region.
struct ContactRegion {
  std::vector<TractionSample> samples;
  ContactPlane plane;

  void validate() const;
  /// True when every sample has non-negative pressure.
  bool compressive(double tol = 0.0) const;
};

enum class HullKind { point, segment, polygon };

/// Convex hull of contact points, counterclockwise. Degenerate inputs are
/// flagged rather than rejected (line contacts produce them routinely).
struct ConvexHullPolygon {
  std::vector<Vec2> vertices;
  HullKind kind = HullKind::polygon;

  bool degenerate() const { return kind != HullKind::polygon; }
};

struct ResultantWrench {
  Vec3 force = Vec3::Zero();            // [N], world frame
  Vec3 moment = Vec3::Zero();           // [N*m] about reference_point
  Vec3 reference_point = Vec3::Zero();  // [m]

  /// Same wrench expressed about a different reference point.
  ResultantWrench about(const Vec3& p) const {
    return {force, moment + (reference_point - p).cross(force), p};
  }
};

/// Net force and moment of the sampled traction field about the plane origin.
ResultantWrench resultant_of_field(const ContactRegion& field);

/// Convex hull of a point set; collinear/duplicate points are deduplicated at
/// 1e-12 m and flagged as point/segment hulls.
ConvexHullPolygon convex_hull(const std::vector<Vec2>& points);

struct ContactCentroid {
  Vec2 point = Vec2::Zero();   // [m], plane coordinates
  double normal_force = 0.0;   // [N]
  double normal_moment = 0.0;  // [N*m]
};

/// Pressure-weighted centroid (center of pressure) of a compressive field,
/// with the equivalent (force at centroid, moment parallel to the normal).
ContactCentroid contact_centroid(const ContactRegion& field);

/// Point on the plane where the tangential moment components vanish.
/// Undefined (nullopt) when the normal force component is not positive.
std::optional<Vec2> zmp_on_plane(const ResultantWrench& wrench, const ContactPlane& plane);

/// True iff the point lies inside or on the hull (1e-12 m boundary band).
bool stability_test(const Vec2& zmp, const ConvexHullPolygon& hull);

}  // namespace softfoot::contact
