#pragma once

// Umbrella header.

#include "khat/classify.hpp"
#include "khat/closure.hpp"
#include "khat/errors.hpp"
#include "khat/experiments.hpp"
#include "khat/extensions.hpp"
#include "khat/families.hpp"
#include "khat/galois_type.hpp"
#include "khat/intersection.hpp"
#include "khat/linear.hpp"
#include "khat/localized_group.hpp"
#include "khat/matrix.hpp"
#include "khat/membership.hpp"
#include "khat/normal_form.hpp"
#include "khat/prime_tuple.hpp"
#include "khat/primes.hpp"
#include "khat/purity.hpp"
#include "khat/rational.hpp"
#include "khat/subspace.hpp"
#include "khat/witness.hpp"
