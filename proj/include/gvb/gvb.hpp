#pragma once

// Umbrella header for the graded variational bicomplex engine.

#include "gvb/rational.hpp"
#include "gvb/errors.hpp"
#include "gvb/multi_index.hpp"
#include "gvb/scalar.hpp"
#include "gvb/model.hpp"
#include "gvb/graded_function.hpp"
#include "gvb/graded_form.hpp"
#include "gvb/jet_calculus.hpp"
#include "gvb/variational.hpp"
