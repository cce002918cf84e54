#pragma once

#include "bgk/collision.hpp"
#include "bgk/config.hpp"
#include "bgk/correction.hpp"
#include "bgk/error.hpp"
#include "bgk/field.hpp"
#include "bgk/grid.hpp"
#include "bgk/initial_condition.hpp"
#include "bgk/io.hpp"
#include "bgk/moments.hpp"
#include "bgk/stepper.hpp"
#include "bgk/transport.hpp"
