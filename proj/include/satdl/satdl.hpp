#pragma once

// Convenience umbrella for the whole library.

#include "satdl/dataset.hpp"
#include "satdl/encode.hpp"
#include "satdl/errors.hpp"
#include "satdl/maxsat.hpp"
#include "satdl/metrics.hpp"
#include "satdl/model.hpp"
#include "satdl/rational.hpp"
#include "satdl/sat.hpp"
#include "satdl/trainer.hpp"
#include "satdl/wcnf.hpp"
