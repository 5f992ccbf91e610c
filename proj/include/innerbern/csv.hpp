#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>

namespace innerbern::csv {

/// 17 significant digits, locale independent; "inf", "-inf", "nan" for
/// non-finite values.
std::string real(double v);

/// Writes one comma-separated record terminated by '\n'.
void row(std::ostream& out, std::initializer_list<std::string_view> fields);

}  // namespace innerbern::csv
