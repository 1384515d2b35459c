/*
 * Copyright 2026 The timextk Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "timextk/value.hpp"

using namespace timextk;

namespace {

void expect(const std::string& raw, ValueShape shape, Granularity gran,
            bool under, bool formed) {
  CAPTURE(raw);
  const ValueInfo v = classify_value(raw);
  CHECK(v.shape == shape);
  CHECK(v.granularity == gran);
  CHECK(v.underspecified == under);
  CHECK(v.well_formed == formed);
}

}  // namespace

TEST_CASE("date and time shapes") {
  expect("2013-03-06", ValueShape::Date, Granularity::Day, false, true);
  expect("2013-04", ValueShape::Date, Granularity::Month, false, true);
  expect("2013", ValueShape::Date, Granularity::Year, false, true);
  expect("201", ValueShape::Date, Granularity::Decade, false, true);
  expect("20", ValueShape::Date, Granularity::Century, false, true);
  expect("2013-W15", ValueShape::Date, Granularity::Week, false, true);
  expect("2013-SP", ValueShape::Date, Granularity::Quarter, false, true);
  expect("2013-Q3", ValueShape::Date, Granularity::Quarter, false, true);
  expect("2013-04-10TNI", ValueShape::Time, Granularity::PartOfDay, false,
         true);
  expect("2013-04-10T14:30", ValueShape::Time, Granularity::Minute, false,
         true);
  expect("2013-04-10T14:30:05", ValueShape::Time, Granularity::Second, false,
         true);
}

TEST_CASE("underspecified values") {
  expect("2002-XX-XX", ValueShape::Date, Granularity::Day, true, true);
  expect("2002-XX", ValueShape::Date, Granularity::Month, true, true);
  expect("PXD", ValueShape::Period, Granularity::Day, true, true);
  expect("PXY", ValueShape::Period, Granularity::Year, true, true);
}

TEST_CASE("periods and refs") {
  expect("P2D", ValueShape::Period, Granularity::Day, false, true);
  expect("P1W", ValueShape::Period, Granularity::Week, false, true);
  expect("P10Y", ValueShape::Period, Granularity::Year, false, true);
  expect("PT3H", ValueShape::Period, Granularity::Hour, false, true);
  expect("PRESENT_REF", ValueShape::Ref, Granularity::Unspecified, false,
         true);
  expect("PAST_REF", ValueShape::Ref, Granularity::Unspecified, false, true);
  expect("FUTURE_REF", ValueShape::Ref, Granularity::Unspecified, false,
         true);
}

TEST_CASE("unknown surfaces stay total") {
  ValueInfo v = classify_value("banana");
  CHECK_FALSE(v.well_formed);
  CHECK(v.underspecified);
  v = classify_value("");
  CHECK_FALSE(v.well_formed);
  // Leading character picks the shape even for junk.
  CHECK(classify_value("P!!").shape == ValueShape::Period);
  CHECK(classify_value("Pbad").well_formed == false);
}

TEST_CASE("canonical form folds century and decade periods") {
  CHECK(canonicalize_value("P1DE") == "P10Y");
  CHECK(canonicalize_value("P1CE") == "P100Y");
  CHECK(canonicalize_value("P2DE") == "P20Y");
  CHECK(canonicalize_value("P2Q") == "P6M");
  CHECK(canonicalize_value("p1de") == "P10Y");
  CHECK(canonicalize_value("P1W") == "P1W");
  CHECK(canonicalize_value("P10W") == "P10W");
  CHECK(canonicalize_value("2013-03-06") == "2013-03-06");
  CHECK(canonicalize_value("present_ref") == "PRESENT_REF");
}

TEST_CASE("canonicalization is idempotent") {
  const char* samples[] = {"P1DE",  "P1CE",       "P2Q",       "P1W",
                           "P3D",   "2013-03-06", "2002-XX",   "pxd",
                           "P40Y",  "2013-W15",   "future_ref", "junk!"};
  for (const char* s : samples) {
    CAPTURE(s);
    const std::string once = canonicalize_value(s);
    CHECK(canonicalize_value(once) == once);
  }
}

TEST_CASE("value equivalence") {
  CHECK(values_equivalent("P1DE", "P10Y"));
  CHECK(values_equivalent("P10Y", "P1DE"));
  CHECK(values_equivalent("P1CE", "P100Y"));
  CHECK(values_equivalent("P2Q", "P6M"));
  CHECK(values_equivalent("p2d", "P2D"));
  CHECK(values_equivalent("2013-03-06", "2013-03-06"));
  CHECK_FALSE(values_equivalent("P1DE", "P1Y"));
  CHECK_FALSE(values_equivalent("P1W", "P7D"));
  CHECK_FALSE(values_equivalent("2013-03-06", "2013-03-07"));
  CHECK_FALSE(values_equivalent("P2D", "2013-03-06"));
}
