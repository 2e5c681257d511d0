#pragma once

#include "quiverforge/algebra.hpp"
#include "quiverforge/gpa.hpp"
#include "quiverforge/io.hpp"
#include "quiverforge/matrix.hpp"
#include "quiverforge/modulation.hpp"
#include "quiverforge/natext.hpp"
#include "quiverforge/quiver.hpp"
#include "quiverforge/rational.hpp"
#include "quiverforge/report.hpp"
#include "quiverforge/reps.hpp"
