#include "gms/scalar.hpp"

// Scalar is header-only; this TU anchors the target.
namespace gms {}
