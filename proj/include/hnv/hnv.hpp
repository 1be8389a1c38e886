#pragma once

#include "hnv/errors.hpp"
#include "hnv/core.hpp"
#include "hnv/kernels.hpp"
#include "hnv/quadrature.hpp"
#include "hnv/measures.hpp"
#include "hnv/functions.hpp"
#include "hnv/catalogue.hpp"
#include "hnv/analysis.hpp"
#include "hnv/io.hpp"
