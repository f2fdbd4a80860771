// Copyright 2026 The APECS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "apecs/sim/course.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "apecs/common/error.h"

namespace apecs::sim {
namespace {

double Cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
Point2 Sub(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
double Length(Point2 a) { return std::hypot(a.x, a.y); }

// Signed curvature of the circle through three points.
double MengerCurvature(Point2 a, Point2 b, Point2 c) {
  const Point2 ab = Sub(b, a);
  const Point2 bc = Sub(c, b);
  const Point2 ac = Sub(c, a);
  const double denom = Length(ab) * Length(bc) * Length(ac);
  if (denom == 0.0) return 0.0;
  return 2.0 * Cross(ab, bc) / denom;
}

}  // namespace

Course::Course(std::vector<Point2> waypoints) : waypoints_(std::move(waypoints)) {
  if (waypoints_.size() < 2) {
    throw InvalidInputError("course needs at least two waypoints");
  }
  arclength_.assign(waypoints_.size(), 0.0);
  for (std::size_t i = 1; i < waypoints_.size(); ++i) {
    const double d = Length(Sub(waypoints_[i], waypoints_[i - 1]));
    if (!(d > 0.0)) {
      throw InvalidInputError("course has coincident consecutive waypoints");
    }
    arclength_[i] = arclength_[i - 1] + d;
  }
  curvature_.assign(waypoints_.size(), 0.0);
  for (std::size_t i = 1; i + 1 < waypoints_.size(); ++i) {
    curvature_[i] =
        MengerCurvature(waypoints_[i - 1], waypoints_[i], waypoints_[i + 1]);
  }
  if (waypoints_.size() > 2) {
    curvature_.front() = curvature_[1];
    curvature_.back() = curvature_[curvature_.size() - 2];
  }
}

CourseProjection Course::Project(Point2 p) const {
  CourseProjection best;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < waypoints_.size(); ++i) {
    const Point2 a = waypoints_[i];
    const Point2 seg = Sub(waypoints_[i + 1], a);
    const Point2 ap = Sub(p, a);
    const double len2 = seg.x * seg.x + seg.y * seg.y;
    const double t = std::clamp((ap.x * seg.x + ap.y * seg.y) / len2, 0.0, 1.0);
    const Point2 q{a.x + t * seg.x, a.y + t * seg.y};
    const double dist = Length(Sub(p, q));
    if (dist < best_dist) {
      best_dist = dist;
      best.segment = i;
      best.t = t;
      best.point = q;
      const double side = Cross(seg, ap);
      best.signed_distance = side < 0.0 ? -dist : dist;
      best.arclength = arclength_[i] + t * std::sqrt(len2);
      best.heading = std::atan2(seg.y, seg.x);
    }
  }
  return best;
}

std::size_t Course::SegmentAt(double s) const {
  if (s <= 0.0) return 0;
  const auto it = std::upper_bound(arclength_.begin(), arclength_.end(), s);
  const std::size_t idx = std::size_t(it - arclength_.begin());
  return std::min(idx == 0 ? 0 : idx - 1, waypoints_.size() - 2);
}

Point2 Course::PointAt(double s) const {
  s = std::clamp(s, 0.0, length());
  const std::size_t i = SegmentAt(s);
  const double seg_len = arclength_[i + 1] - arclength_[i];
  const double t = (s - arclength_[i]) / seg_len;
  const Point2 a = waypoints_[i];
  const Point2 b = waypoints_[i + 1];
  return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

double Course::HeadingAt(double s) const {
  const std::size_t i = SegmentAt(std::clamp(s, 0.0, length()));
  const Point2 d = Sub(waypoints_[i + 1], waypoints_[i]);
  return std::atan2(d.y, d.x);
}

double Course::CurvatureAt(double s) const {
  s = std::clamp(s, 0.0, length());
  const std::size_t i = SegmentAt(s);
  const double t = (s - arclength_[i]) / (arclength_[i + 1] - arclength_[i]);
  return (1.0 - t) * curvature_[i] + t * curvature_[i + 1];
}

CourseBuilder::CourseBuilder(Point2 start, double heading, double spacing)
    : points_{start}, heading_(heading), spacing_(spacing) {
  if (!(spacing > 0.0)) throw InvalidInputError("spacing must be positive");
}

CourseBuilder& CourseBuilder::Straight(double length) {
  const int n = std::max(1, int(std::ceil(length / spacing_)));
  const Point2 start = points_.back();
  for (int k = 1; k <= n; ++k) {
    const double d = length * k / n;
    points_.push_back({start.x + d * std::cos(heading_),
                       start.y + d * std::sin(heading_)});
  }
  return *this;
}

CourseBuilder& CourseBuilder::Arc(double radius, double turn) {
  const double arc_len = radius * std::abs(turn);
  const int n = std::max(1, int(std::ceil(arc_len / spacing_)));
  const Point2 start = points_.back();
  const double side = turn > 0.0 ? 1.0 : -1.0;
  // Center lies to the left for a left turn.
  const Point2 center{start.x - side * radius * std::sin(heading_),
                      start.y + side * radius * std::cos(heading_)};
  const double phi0 = std::atan2(start.y - center.y, start.x - center.x);
  for (int k = 1; k <= n; ++k) {
    const double phi = phi0 + turn * k / n;
    points_.push_back(
        {center.x + radius * std::cos(phi), center.y + radius * std::sin(phi)});
  }
  heading_ += turn;
  return *this;
}

Course CourseBuilder::Build() const { return Course(points_); }

Course BenchmarkCourse() {
  return CourseBuilder({0.0, 0.0}, 0.0, 1.0)
      .Straight(30.0)
      .Arc(25.0, M_PI / 2)
      .Arc(25.0, -M_PI)
      .Arc(25.0, M_PI / 2)
      .Straight(110.0)
      .Build();
}

Course StraightCourse(double length, double spacing) {
  return CourseBuilder({0.0, 0.0}, 0.0, spacing).Straight(length).Build();
}

Course CircleCourse(double radius, double spacing) {
  return CourseBuilder({0.0, -radius}, 0.0, spacing)
      .Arc(radius, 2.0 * M_PI)
      .Build();
}

double CrossTrackError(const VehicleState& s, const Course& course) {
  return course.Project({s.x, s.y}).signed_distance;
}

double HeadingError(const VehicleState& s, const Course& course) {
  return WrapAngle(s.heading - course.Project({s.x, s.y}).heading);
}

}  // namespace apecs::sim
