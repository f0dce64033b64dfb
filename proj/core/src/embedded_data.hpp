#pragma once

namespace primbase::detail {

// Contents of data/mathieu24.gens, embedded at configure time.
extern const char* const kMathieu24Gens;

}  // namespace primbase::detail
