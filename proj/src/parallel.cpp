#include "parallel.hpp"

#include <mpfr.h>

namespace frobenius::detail {

bool threads_supported() { return mpfr_buildopt_tls_p() != 0; }

}  // namespace frobenius::detail
