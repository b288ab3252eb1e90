#include "softfoot/contact.hpp"

#include <algorithm>
#include <cmath>

namespace softfoot::contact {

namespace {

constexpr double kGeomTol = 1e-12;

double cross2(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

}  // namespace

ContactPlane ContactPlane::from_normal(const Vec3& origin, const Vec3& normal) {
  require(normal.norm() > 0.0, "contact plane normal must be nonzero");
  ContactPlane plane;
  plane.origin = origin;
  plane.normal = normal.normalized();
  int least = 0;
  plane.normal.cwiseAbs().minCoeff(&least);
  plane.tangent1 = plane.normal.cross(Vec3::Unit(least)).normalized();
  plane.tangent2 = plane.normal.cross(plane.tangent1);
  return plane;
}

void ContactRegion::validate() const {
  require(!samples.empty(), "empty contact region");
  require(std::abs(plane.normal.norm() - 1.0) < 1e-9, "contact plane normal must be unit");
  for (const auto& s : samples) {
    require(s.area_weight > 0.0, "sample area_weight must be > 0");
    require(s.position.allFinite() && s.traction.allFinite(), "sample values must be finite");
  }
}

bool ContactRegion::compressive(double tol) const {
  return std::all_of(samples.begin(), samples.end(),
                     [tol](const TractionSample& s) { return s.traction.x() >= -tol; });
}

ResultantWrench resultant_of_field(const ContactRegion& field) {
  if (field.samples.empty()) throw invalid_input("empty contact region");
  field.validate();
  ResultantWrench w;
  w.reference_point = field.plane.origin;
  for (const auto& s : field.samples) {
    const Vec3 f = field.plane.traction_to_world(s.traction) * s.area_weight;
    const Vec3 r = field.plane.to_world(s.position);
    w.force += f;
    w.moment += (r - field.plane.origin).cross(f);
  }
  return w;
}

ConvexHullPolygon convex_hull(const std::vector<Vec2>& points) {
  if (points.empty()) throw invalid_input("convex hull of empty point set");

  // Dedup at 1e-12 after sorting lexicographically.
  std::vector<Vec2> pts = points;
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec2& a, const Vec2& b) { return (a - b).norm() <= kGeomTol; }),
            pts.end());

  ConvexHullPolygon hull;
  if (pts.size() == 1) {
    hull.vertices = {pts[0]};
    hull.kind = HullKind::point;
    return hull;
  }

  // Andrew's monotone chain. Strict turns only, so collinear interior points drop out.
  const int count = static_cast<int>(pts.size());
  std::vector<Vec2> chain(2 * static_cast<std::size_t>(count));
  int k = 0;
  for (int i = 0; i < count; ++i) {  // lower hull
    while (k >= 2 && cross2(chain[k - 2], chain[k - 1], pts[i]) <= kGeomTol) --k;
    chain[k++] = pts[i];
  }
  for (int i = count - 2, floor = k + 1; i >= 0; --i) {  // upper hull
    while (k >= floor && cross2(chain[k - 2], chain[k - 1], pts[i]) <= kGeomTol) --k;
    chain[k++] = pts[i];
  }
  chain.resize(static_cast<std::size_t>(k - 1));  // last point repeats the first

  if (chain.size() < 3) {
    // All points collinear: segment between the lexicographic extremes.
    hull.vertices = {pts.front(), pts.back()};
    hull.kind = HullKind::segment;
    return hull;
  }
  hull.vertices = std::move(chain);
  hull.kind = HullKind::polygon;
  return hull;
}

ContactCentroid contact_centroid(const ContactRegion& field) {
  field.validate();
  double fn = 0.0;
  Vec2 weighted = Vec2::Zero();
  for (const auto& s : field.samples) {
    const double w = s.traction.x() * s.area_weight;
    fn += w;
    weighted += w * s.position;
  }
  if (!(fn > 0.0)) throw invalid_input("non-compressive field");

  ContactCentroid c;
  c.point = weighted / fn;
  c.normal_force = fn;

  // Residual moment about the centroid; the pressure part vanishes there by
  // construction, friction contributes only the normal (torsion) component.
  const ResultantWrench w = resultant_of_field(field);
  const Vec3 centroid_world = field.plane.to_world(c.point);
  c.normal_moment = field.plane.normal.dot(w.about(centroid_world).moment);
  return c;
}

std::optional<Vec2> zmp_on_plane(const ResultantWrench& wrench, const ContactPlane& plane) {
  const double fn = plane.normal.dot(wrench.force);
  if (!(fn > 0.0)) return std::nullopt;
  const ResultantWrench at_origin = wrench.about(plane.origin);
  const Vec3 d = plane.normal.cross(at_origin.moment) / fn;
  return Vec2(d.dot(plane.tangent1), d.dot(plane.tangent2));
}

bool stability_test(const Vec2& zmp, const ConvexHullPolygon& hull) {
  require(!hull.vertices.empty(), "hull has no vertices");
  switch (hull.kind) {
    case HullKind::point:
      return (zmp - hull.vertices[0]).norm() <= kGeomTol;
    case HullKind::segment:
      return point_segment_distance(zmp, hull.vertices[0], hull.vertices[1]) <= kGeomTol;
    case HullKind::polygon:
      break;
  }
  const auto n = hull.vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = hull.vertices[i];
    const Vec2& b = hull.vertices[(i + 1) % n];
    const double edge_len = (b - a).norm();
    // signed distance to the (ccw) edge line; inside is non-negative
    if (cross2(a, b, zmp) < -kGeomTol * std::max(1.0, edge_len)) return false;
  }
  return true;
}

}  // namespace softfoot::contact
