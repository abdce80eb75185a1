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

#ifndef BASISRISK_TRACKS_HPP_
#define BASISRISK_TRACKS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "basisrisk/contracts.hpp"
#include "basisrisk/geodesy.hpp"

namespace basisrisk {

struct TrackPoint {
  double lat_deg = 0.0;
  double lon_deg = 0.0;
  double wind_kn = 0.0;
};

struct Track {
  std::string id;
  std::vector<TrackPoint> points;
};

struct TrackSet {
  std::vector<Track> tracks;

  // Throws NumericDomainError on empty tracks, coordinates out of range or
  // negative / non-finite winds.
  void validate() const;
};

struct Site {
  std::string name;
  double lat_deg = 0.0;
  double lon_deg = 0.0;
  double radius_km = 50.0;
  double trigger_threshold_kn = 83.0;

  GeoPoint location() const { return {lat_deg, lon_deg}; }
  void validate() const;
};

double min_distance_km(const Track& track, const Site& site);

// Largest wind over the points inside the circle plus one neighbour on each
// side of every inside run. A track that crosses the circle between two
// points uses the endpoints of its closest segment. Empty if the track
// misses the circle.
std::optional<double> incident_wind(const Track& track, const Site& site);

std::vector<double> incident_windspeeds(const TrackSet& tracks, const Site& site);

struct WindConversion {
  double gust_factor = 0.88;   // 10-min mean to 1-min sustained
  double kn_per_ms = 1.943844;
};

double storm_wind_convert(double wind_10min_ms, const WindConversion& conv = {});

// Track CSV: header track_id,step,lat_deg,lon_deg,wind_kn; steps strictly
// increasing within a track. Rows of one track need not be contiguous.
TrackSet read_track_csv(std::istream& in);
void write_track_csv(std::ostream& out, const TrackSet& tracks);

// Public STORM synthetic-track text format, one point per line:
// year, month, tc_number, timestep, basin, lat, lon (0..360), pressure,
// wind (10-min, m/s), ... Tracks are keyed by year and tc_number;
// longitudes are mapped to [-180, 180] and winds converted to knots.
TrackSet read_storm(std::istream& in, const WindConversion& conv = {});

// Random tracks for tests and demos: start uniformly in a lat/lon box,
// move step_km per step on a slowly turning heading, and carry a peak wind
// offset + Gamma(shape, scale) with a smooth rise and decay along the track.
struct SyntheticTrackOptions {
  std::size_t n = 2000;
  double lat_lo = 20.0, lat_hi = 35.0;
  double lon_lo = -90.0, lon_hi = -75.0;
  int steps = 24;
  double step_km = 60.0;
  double turn_sd_deg = 8.0;
  double peak_offset = 30.0, peak_shape = 4.0, peak_scale = 12.0;
};

TrackSet synthetic_tracks(const SyntheticTrackOptions& options, std::uint64_t seed);

// Sample CSV with header loss,index.
LossIndexSample read_sample_csv(std::istream& in);
void write_sample_csv(std::ostream& out, const LossIndexSample& sample);

}  // namespace basisrisk

#endif  // BASISRISK_TRACKS_HPP_
