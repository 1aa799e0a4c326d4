#pragma once

// Umbrella header: scale-resolved dependence analysis of signals and
// images. Wavelet transforms (orthogonal and non-decimated, 1D and 2D)
// plus levelwise Pearson/Kendall/partial correlations with confidence
// intervals, the exact cross-scale covariance decomposition, and seeded
// generators for the simulation workflows.

#include "wavecorr/depstats.hpp"
#include "wavecorr/dwt1d.hpp"
#include "wavecorr/errors.hpp"
#include "wavecorr/filterbank.hpp"
#include "wavecorr/io.hpp"
#include "wavecorr/matrix.hpp"
#include "wavecorr/multiscale.hpp"
#include "wavecorr/ndwt1d.hpp"
#include "wavecorr/parallel.hpp"
#include "wavecorr/simgen.hpp"
#include "wavecorr/wt2d.hpp"
