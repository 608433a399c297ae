#include <cstdio>
#include <cstdlib>

#include "reqnet/format.hpp"

namespace reqnet {

std::string format_real(double value, int significant) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", significant, value);
    return buf;
}

double round_significant(double value, int significant) {
    return std::strtod(format_real(value, significant).c_str(), nullptr);
}

}  // namespace reqnet
