#pragma once

#include "tricoble/bertini.hpp"
#include "tricoble/construct.hpp"
#include "tricoble/errors.hpp"
#include "tricoble/field.hpp"
#include "tricoble/forms.hpp"
#include "tricoble/groebner.hpp"
#include "tricoble/json_io.hpp"
#include "tricoble/lll.hpp"
#include "tricoble/matrix.hpp"
#include "tricoble/picard.hpp"
#include "tricoble/polynomial.hpp"
#include "tricoble/projgeom.hpp"
#include "tricoble/univariate.hpp"
