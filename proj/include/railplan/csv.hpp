#ifndef RAILPLAN_CSV_HPP
#define RAILPLAN_CSV_HPP

#include <string>

namespace railplan {

/// Fixed scientific notation with 12 significant digits ("%.11e");
/// byte-identical for identical inputs on every run.
std::string format_quantity(double x);

} // namespace railplan

#endif
