#include "railplan/csv.hpp"

#include <cstdio>

namespace railplan {

std::string format_quantity(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.11e", x);
    return std::string(buf);
}

} // namespace railplan
