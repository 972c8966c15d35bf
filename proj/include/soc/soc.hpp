#pragma once

// Umbrella header.

#include "soc/analysis.hpp"
#include "soc/capacity.hpp"
#include "soc/crosseff.hpp"
#include "soc/errors.hpp"
#include "soc/functor.hpp"
#include "soc/io.hpp"
#include "soc/matrix.hpp"
#include "soc/partitions.hpp"
#include "soc/random.hpp"
#include "soc/symseq.hpp"
#include "soc/taylor.hpp"
