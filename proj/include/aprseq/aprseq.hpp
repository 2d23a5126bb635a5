#pragma once

#include "aprseq/exactfield.hpp"
#include "aprseq/index_set.hpp"
#include "aprseq/symmatrix.hpp"
#include "aprseq/minorseq.hpp"
#include "aprseq/matrix_io.hpp"
#include "aprseq/attain.hpp"
#include "aprseq/realize.hpp"
#include "aprseq/census.hpp"
#include "aprseq/properties.hpp"
