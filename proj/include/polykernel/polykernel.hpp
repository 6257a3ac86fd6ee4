#pragma once

// Convenience include for the whole library.

#include "polykernel/closedform.hpp"
#include "polykernel/errors.hpp"
#include "polykernel/kernelseries.hpp"
#include "polykernel/measures.hpp"
#include "polykernel/orthopoly.hpp"
#include "polykernel/rational.hpp"
#include "polykernel/special.hpp"
#include "polykernel/verify.hpp"
