// cvhss: umbrella header.

#ifndef CVHSS_CVHSS_HPP
#define CVHSS_CVHSS_HPP

#include "cvhss/core.hpp"
#include "cvhss/errors.hpp"
#include "cvhss/fft.hpp"
#include "cvhss/poly.hpp"
#include "cvhss/dense.hpp"
#include "cvhss/sector.hpp"
#include "cvhss/cauchy.hpp"
#include "cvhss/hss.hpp"
#include "cvhss/hss_solve.hpp"
#include "cvhss/problems.hpp"
#include "cvhss/baselines.hpp"
#include "cvhss/csv.hpp"
#include "cvhss/experiments.hpp"

#endif
