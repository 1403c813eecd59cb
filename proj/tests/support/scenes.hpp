#pragma once

// Small fixed scenes shared by the tests.

namespace prg::testing {

inline const char* kUnitDisk = R"({"circles":[{"id":"S","cx":"0","cy":"0","r":"1"}]})";

inline const char* kAnnulus =
    R"({"circles":[{"id":"S2","cx":"0","cy":"0","r":"2"},{"id":"S1","cx":"0","cy":"0","r":"1"}],
        "initial_count":2})";

// Unit disk with a small exterior bite centered on the circle.
inline const char* kBite =
    R"({"circles":[{"id":"S","cx":"0","cy":"0","r":"1"}],"initial_count":1,
        "additions":[{"id":"T","cx":"-3/5","cy":"4/5","r":"1/10","side":"exterior"}]})";

// Intersection of two unit disks.
inline const char* kLens =
    R"({"circles":[{"id":"A","cx":"0","cy":"0","r":"1"}],"initial_count":1,
        "additions":[{"id":"B","cx":"1","cy":"0","r":"1","side":"interior"}]})";

// Unit disk with exterior bites at both x-extremes: the middle edge's
// boundary curves run over arcs {1,2} and {5,6} only.
inline const char* kTwoBites =
    R"({"circles":[{"id":"S","cx":"0","cy":"0","r":"1"}],"initial_count":1,
        "additions":[{"id":"L","cx":"-1","cy":"0","r":"1/2","side":"exterior"},
                     {"id":"R","cx":"1","cy":"0","r":"1/2","side":"exterior"}]})";

}  // namespace prg::testing
