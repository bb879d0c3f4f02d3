#pragma once

#include "ergo/contraction.hpp"
#include "ergo/ergodicity.hpp"
#include "ergo/error.hpp"
#include "ergo/linalg/dense.hpp"
#include "ergo/linalg/eigen.hpp"
#include "ergo/linalg/io.hpp"
#include "ergo/linalg/pnorm.hpp"
#include "ergo/linalg/projectors.hpp"
#include "ergo/linalg/restricted.hpp"
#include "ergo/linalg/stochastic.hpp"
#include "ergo/markov.hpp"
#include "ergo/oracle.hpp"
#include "ergo/random.hpp"
#include "ergo/report.hpp"
#include "ergo/seminorm.hpp"
#include "ergo/spectral.hpp"
#include "ergo/weight.hpp"
