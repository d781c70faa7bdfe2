#pragma once

#include "qzeros/errors.hpp"
#include "qzeros/qcore.hpp"
#include "qzeros/qseries.hpp"
#include "qzeros/catalog.hpp"
#include "qzeros/poly_roots.hpp"
#include "qzeros/zeros.hpp"
#include "qzeros/parallel.hpp"
#include "qzeros/bounds.hpp"
#include "qzeros/regions.hpp"
