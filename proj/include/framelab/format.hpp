#pragma once

#include <cstdio>
#include <string>

namespace framelab {

// Full-precision decimal rendering (17 significant digits round-trips every
// double), so emitted CSV/JSON is byte-stable across runs.
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace framelab
