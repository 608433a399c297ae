#pragma once

#include <string>

namespace reqnet {

/// printf `%.*g`; locale-independent for the C locale the tools run in.
std::string format_real(double value, int significant = 12);

/// Rounds to `significant` decimal digits so that values differing only in
/// the last few ulps (libm differences between platforms) serialize the same.
double round_significant(double value, int significant = 12);

}  // namespace reqnet
