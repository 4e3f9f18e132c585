#pragma once

// Umbrella header: the full permeability-decoding toolkit.

#include "permdec/calib.hpp"
#include "permdec/errors.hpp"
#include "permdec/geometry.hpp"
#include "permdec/grid.hpp"
#include "permdec/labels.hpp"
#include "permdec/micromodel.hpp"
#include "permdec/numeric.hpp"
#include "permdec/pim.hpp"
#include "permdec/pipeline.hpp"
#include "permdec/report.hpp"
#include "permdec/segmenter.hpp"
#include "permdec/version.hpp"
