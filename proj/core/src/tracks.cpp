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

#include "basisrisk/tracks.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <string_view>

#include "basisrisk/errors.hpp"
#include "basisrisk/rng.hpp"

namespace basisrisk {
namespace {

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(',', start);
    std::string_view field = line.substr(start, pos == std::string_view::npos ? pos : pos - start);
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) {
      field.remove_suffix(1);
    }
    out.push_back(field);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view s, std::size_t line_no) {
  double v = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw NumericDomainError("bad number '" + std::string(s) + "' on line " +
                             std::to_string(line_no));
  }
  return v;
}

long long parse_int(std::string_view s, std::size_t line_no) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    // STORM writes integers as floats, e.g. "3.0".
    const double d = parse_double(s, line_no);
    if (d != std::floor(d)) {
      throw NumericDomainError("bad integer '" + std::string(s) + "' on line " +
                               std::to_string(line_no));
    }
    return static_cast<long long>(d);
  }
  return v;
}

void put_double(std::ostream& out, double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, ptr - buf);
}

}  // namespace

void TrackSet::validate() const {
  for (const auto& t : tracks) {
    if (t.points.empty()) throw NumericDomainError("track " + t.id + " has no points");
    for (const auto& p : t.points) {
      if (!(p.lat_deg >= -90.0 && p.lat_deg <= 90.0) ||
          !(p.lon_deg >= -180.0 && p.lon_deg <= 180.0)) {
        throw NumericDomainError("track " + t.id + " has coordinates out of range");
      }
      if (!std::isfinite(p.wind_kn) || p.wind_kn < 0.0) {
        throw NumericDomainError("track " + t.id + " has an invalid wind speed");
      }
    }
  }
}

void Site::validate() const {
  if (!(radius_km > 0.0)) throw NumericDomainError("site radius must be positive");
  if (!(trigger_threshold_kn > 0.0)) throw NumericDomainError("trigger threshold must be positive");
  if (!(lat_deg >= -90.0 && lat_deg <= 90.0) || !(lon_deg >= -180.0 && lon_deg <= 180.0)) {
    throw NumericDomainError("site coordinates out of range");
  }
}

double min_distance_km(const Track& track, const Site& site) {
  std::vector<GeoPoint> line;
  line.reserve(track.points.size());
  for (const auto& p : track.points) line.push_back({p.lat_deg, p.lon_deg});
  return min_distance_km(line, site.location());
}

std::optional<double> incident_wind(const Track& track, const Site& site) {
  const auto& pts = track.points;
  if (pts.empty()) return std::nullopt;
  const GeoPoint c = site.location();
  const std::size_t n = pts.size();
  std::vector<char> use(n, 0);
  bool any_inside = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (great_circle_km({pts[i].lat_deg, pts[i].lon_deg}, c) <= site.radius_km) {
      any_inside = true;
      use[i] = 1;
      if (i > 0) use[i - 1] = 1;
      if (i + 1 < n) use[i + 1] = 1;
    }
  }
  if (!any_inside) {
    if (n < 2) return std::nullopt;
    double best = std::numeric_limits<double>::infinity();
    std::size_t seg = 0;
    for (std::size_t i = 1; i < n; ++i) {
      const double d = segment_distance_km({pts[i - 1].lat_deg, pts[i - 1].lon_deg},
                                           {pts[i].lat_deg, pts[i].lon_deg}, c);
      if (d < best) {
        best = d;
        seg = i;
      }
    }
    if (best > site.radius_km) return std::nullopt;
    use[seg - 1] = use[seg] = 1;
  }
  double w = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (use[i]) w = std::max(w, pts[i].wind_kn);
  }
  return w;
}

std::vector<double> incident_windspeeds(const TrackSet& tracks, const Site& site) {
  std::vector<double> out;
  for (const auto& t : tracks.tracks) {
    if (auto w = incident_wind(t, site)) out.push_back(*w);
  }
  return out;
}

double storm_wind_convert(double wind_10min_ms, const WindConversion& conv) {
  if (!(wind_10min_ms >= 0.0)) throw NumericDomainError("wind speed must be non-negative");
  return wind_10min_ms / conv.gust_factor * conv.kn_per_ms;
}

TrackSet read_track_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw NumericDomainError("empty track file");
  const auto header = split_csv(line);
  const std::vector<std::string_view> expected = {"track_id", "step", "lat_deg", "lon_deg",
                                                  "wind_kn"};
  if (header != expected) throw NumericDomainError("unexpected track CSV header");

  std::map<std::string, std::size_t> index;
  TrackSet set;
  std::vector<long long> last_step;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv(line);
    if (f.size() != 5) throw NumericDomainError("expected 5 fields on line " + std::to_string(line_no));
    const std::string id(f[0]);
    auto [it, inserted] = index.emplace(id, set.tracks.size());
    if (inserted) {
      set.tracks.push_back({id, {}});
      last_step.push_back(0);
    }
    const long long step = parse_int(f[1], line_no);
    auto& track = set.tracks[it->second];
    if (!track.points.empty() && step <= last_step[it->second]) {
      throw NumericDomainError("steps not increasing on line " + std::to_string(line_no));
    }
    last_step[it->second] = step;
    track.points.push_back(
        {parse_double(f[2], line_no), parse_double(f[3], line_no), parse_double(f[4], line_no)});
  }
  set.validate();
  return set;
}

void write_track_csv(std::ostream& out, const TrackSet& tracks) {
  out << "track_id,step,lat_deg,lon_deg,wind_kn\n";
  for (const auto& t : tracks.tracks) {
    for (std::size_t i = 0; i < t.points.size(); ++i) {
      const auto& p = t.points[i];
      out << t.id << ',' << i << ',';
      put_double(out, p.lat_deg);
      out << ',';
      put_double(out, p.lon_deg);
      out << ',';
      put_double(out, p.wind_kn);
      out << '\n';
    }
  }
}

TrackSet read_storm(std::istream& in, const WindConversion& conv) {
  std::map<std::string, std::size_t> index;
  TrackSet set;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv(line);
    if (f.size() < 9) throw NumericDomainError("short STORM record on line " + std::to_string(line_no));
    const std::string id = std::to_string(parse_int(f[0], line_no)) + "-" +
                           std::to_string(parse_int(f[2], line_no));
    auto [it, inserted] = index.emplace(id, set.tracks.size());
    if (inserted) set.tracks.push_back({id, {}});
    double lon = parse_double(f[6], line_no);
    if (lon > 180.0) lon -= 360.0;
    set.tracks[it->second].points.push_back(
        {parse_double(f[5], line_no), lon, storm_wind_convert(parse_double(f[8], line_no), conv)});
  }
  set.validate();
  return set;
}

TrackSet synthetic_tracks(const SyntheticTrackOptions& o, std::uint64_t seed) {
  if (o.steps < 1 || !(o.lat_hi > o.lat_lo) || !(o.lon_hi > o.lon_lo)) {
    throw NumericDomainError("invalid synthetic track options");
  }
  constexpr double kDeg = std::numbers::pi / 180.0;
  TrackSet set;
  set.tracks.reserve(o.n);
  for (std::size_t t = 0; t < o.n; ++t) {
    Rng rng(seed, stream_id(5, t));
    double lat = (o.lat_lo + (o.lat_hi - o.lat_lo) * rng.uniform()) * kDeg;
    double lon = (o.lon_lo + (o.lon_hi - o.lon_lo) * rng.uniform()) * kDeg;
    double heading = 2.0 * std::numbers::pi * rng.uniform();
    const double peak = o.peak_offset + o.peak_scale * rng.gamma(o.peak_shape);
    const double at = rng.uniform();  // where along the track the peak sits
    Track track{"S" + std::to_string(t), {}};
    const double delta = o.step_km / kEarthRadiusKm;
    for (int s = 0; s < o.steps; ++s) {
      const double pos = o.steps == 1 ? at : static_cast<double>(s) / (o.steps - 1);
      const double shape = std::exp(-8.0 * (pos - at) * (pos - at));
      track.points.push_back({lat / kDeg, std::remainder(lon / kDeg, 360.0), peak * shape});
      // Destination point along a great circle.
      const double lat2 = std::asin(std::sin(lat) * std::cos(delta) +
                                    std::cos(lat) * std::sin(delta) * std::cos(heading));
      lon += std::atan2(std::sin(heading) * std::sin(delta) * std::cos(lat),
                        std::cos(delta) - std::sin(lat) * std::sin(lat2));
      lat = lat2;
      heading += o.turn_sd_deg * kDeg * rng.normal();
    }
    set.tracks.push_back(std::move(track));
  }
  return set;
}

LossIndexSample read_sample_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw NumericDomainError("empty sample file");
  const auto header = split_csv(line);
  if (header.size() != 2 || header[0] != "loss" || header[1] != "index") {
    throw NumericDomainError("unexpected sample CSV header");
  }
  LossIndexSample s;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv(line);
    if (f.size() != 2) throw NumericDomainError("expected 2 fields on line " + std::to_string(line_no));
    s.losses.push_back(parse_double(f[0], line_no));
    s.indices.push_back(parse_double(f[1], line_no));
  }
  return s;
}

void write_sample_csv(std::ostream& out, const LossIndexSample& sample) {
  out << "loss,index\n";
  for (std::size_t i = 0; i < sample.size(); ++i) {
    put_double(out, sample.losses[i]);
    out << ',';
    put_double(out, sample.indices[i]);
    out << '\n';
  }
}

}  // namespace basisrisk
