#include "sphfin/grid.hpp"

#include "sphfin/errors.hpp"

namespace sphfin {

void GridSpec::validate() const {
    if (!(r0 > 0.0) || !(r1 >= r0)) throw ValidationError("grid requires 0 < r0 <= r1");
    if (nr < 1 || ns < 1) throw ValidationError("grid requires nr >= 1 and ns >= 1");
    if (nr == 1 && r1 != r0) throw ValidationError("grid with nr = 1 requires r0 = r1");
    if (!(eps > 0.0) || !(eps < 1.0)) throw ValidationError("grid margin must lie in (0, 1)");
}

}  // namespace sphfin
