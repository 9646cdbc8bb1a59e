#include "gms/profiles.hpp"

namespace gms {

// Explicit instantiations for the two numeric backends.
template class GAlpha<FieldElement>;
template class GAlpha<BigFloat>;
template class GAB<FieldElement>;
template class GAB<BigFloat>;
template class Psi<FieldElement>;
template class Psi<BigFloat>;

}  // namespace gms
