// Copyright 2026 The basisrisk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "basisrisk/geodesy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace basisrisk {
namespace {

using Vec3 = std::array<double, 3>;

Vec3 n_vector(GeoPoint g) {
  const double lat = g.lat_deg * std::numbers::pi / 180.0;
  const double lon = g.lon_deg * std::numbers::pi / 180.0;
  return {std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

// atan2 form stays accurate for tiny and near-antipodal angles.
double angle(const Vec3& a, const Vec3& b) { return std::atan2(norm(cross(a, b)), dot(a, b)); }

}  // namespace

double great_circle_km(GeoPoint a, GeoPoint b) {
  return kEarthRadiusKm * angle(n_vector(a), n_vector(b));
}

double segment_distance_km(GeoPoint a, GeoPoint b, GeoPoint p) {
  const Vec3 va = n_vector(a), vb = n_vector(b), vp = n_vector(p);
  const double da = angle(va, vp);
  const double db = angle(vb, vp);
  Vec3 n = cross(va, vb);
  const double nn = norm(n);
  if (nn < 1e-15) return kEarthRadiusKm * std::min(da, db);
  for (auto& c : n) c /= nn;
  const double s = std::clamp(dot(vp, n), -1.0, 1.0);
  Vec3 foot = {vp[0] - s * n[0], vp[1] - s * n[1], vp[2] - s * n[2]};
  // The foot lies on the minor arc iff it sits between a and b around n.
  if (dot(cross(va, foot), n) >= 0.0 && dot(cross(foot, vb), n) >= 0.0) {
    return kEarthRadiusKm * std::abs(std::asin(s));
  }
  return kEarthRadiusKm * std::min(da, db);
}

double min_distance_km(std::span<const GeoPoint> polyline, GeoPoint p) {
  if (polyline.empty()) return std::numeric_limits<double>::infinity();
  if (polyline.size() == 1) return great_circle_km(polyline[0], p);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < polyline.size(); ++i) {
    best = std::min(best, segment_distance_km(polyline[i - 1], polyline[i], p));
  }
  return best;
}

}  // namespace basisrisk
