#pragma once

#include "rph/binomial.hpp"
#include "rph/cells.hpp"
#include "rph/errors.hpp"
#include "rph/exact.hpp"
#include "rph/homotopy.hpp"
#include "rph/interval.hpp"
#include "rph/io.hpp"
#include "rph/krawczyk.hpp"
#include "rph/patchwork.hpp"
#include "rph/serialize.hpp"
#include "rph/system.hpp"
#include "rph/tracker.hpp"
