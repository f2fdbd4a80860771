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

#ifndef APECS_SIM_COURSE_H_
#define APECS_SIM_COURSE_H_

#include <cstddef>
#include <vector>

#include "apecs/sim/vehicle.h"

namespace apecs::sim {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// Closest point of a course to a query point.
struct CourseProjection {
  std::size_t segment = 0;
  double t = 0.0;               // position along the segment, [0, 1]
  Point2 point;
  double signed_distance = 0.0; // > 0 when the query is left of the course
  double arclength = 0.0;
  double heading = 0.0;         // heading of the closest segment
};

// Ordered waypoint polyline with cumulative arclength and discrete
// (three-point) signed curvature per waypoint.
class Course {
 public:
  // Throws InvalidInputError with fewer than two waypoints or coincident
  // consecutive waypoints.
  explicit Course(std::vector<Point2> waypoints);

  const std::vector<Point2>& waypoints() const { return waypoints_; }
  const std::vector<double>& arclength() const { return arclength_; }
  const std::vector<double>& curvature() const { return curvature_; }
  double length() const { return arclength_.back(); }

  CourseProjection Project(Point2 p) const;

  // Point, heading and curvature at arclength s (clamped to the course).
  Point2 PointAt(double s) const;
  double HeadingAt(double s) const;
  double CurvatureAt(double s) const;

 private:
  std::size_t SegmentAt(double s) const;

  std::vector<Point2> waypoints_;
  std::vector<double> arclength_;
  std::vector<double> curvature_;
};

// Polyline assembled from straight and circular pieces.
class CourseBuilder {
 public:
  CourseBuilder(Point2 start, double heading, double spacing = 1.0);

  CourseBuilder& Straight(double length);
  // Positive `turn` (radians) turns left.
  CourseBuilder& Arc(double radius, double turn);

  Course Build() const;

 private:
  std::vector<Point2> points_;
  double heading_;
  double spacing_;
};

// S-curve followed by a straightaway, about 300 m long, starting at the
// origin heading along +x.
Course BenchmarkCourse();
Course StraightCourse(double length, double spacing = 1.0);
// Full circle of the given radius traversed counterclockwise, starting at
// (0, -radius) heading along +x.
Course CircleCourse(double radius, double spacing = 0.25);

// Signed perpendicular distance to the nearest course segment, > 0 when the
// vehicle is left of the course.
double CrossTrackError(const VehicleState& s, const Course& course);
// Vehicle heading minus course heading at the closest point, wrapped.
double HeadingError(const VehicleState& s, const Course& course);

}  // namespace apecs::sim

#endif  // APECS_SIM_COURSE_H_
