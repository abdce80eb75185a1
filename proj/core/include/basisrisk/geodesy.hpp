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

#ifndef BASISRISK_GEODESY_HPP_
#define BASISRISK_GEODESY_HPP_

#include <span>

namespace basisrisk {

inline constexpr double kEarthRadiusKm = 6371.0;

struct GeoPoint {
  double lat_deg = 0.0;
  double lon_deg = 0.0;
};

// Spherical great-circle distance.
double great_circle_km(GeoPoint a, GeoPoint b);

// Distance from p to the minor geodesic arc a-b. Uses the cross-track
// distance when the perpendicular foot falls on the arc, else the nearer
// endpoint.
double segment_distance_km(GeoPoint a, GeoPoint b, GeoPoint p);

// Minimum over the segments of a polyline; a single point is its own
// segment. Empty input gives +inf.
double min_distance_km(std::span<const GeoPoint> polyline, GeoPoint p);

}  // namespace basisrisk

#endif  // BASISRISK_GEODESY_HPP_
