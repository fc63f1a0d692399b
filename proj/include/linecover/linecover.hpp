#ifndef LINECOVER_LINECOVER_HPP
#define LINECOVER_LINECOVER_HPP

#include "linecover/approx.hpp"
#include "linecover/atsp.hpp"
#include "linecover/core.hpp"
#include "linecover/cost_model.hpp"
#include "linecover/flow_pipeline.hpp"
#include "linecover/improve.hpp"
#include "linecover/io.hpp"
#include "linecover/mcf.hpp"
#include "linecover/oracle.hpp"
#include "linecover/paths.hpp"

#endif  // LINECOVER_LINECOVER_HPP
