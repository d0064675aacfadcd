#pragma once

#include "lqf/canonical.hpp"
#include "lqf/expr.hpp"
#include "lqf/matrix.hpp"
#include "lqf/quaternion.hpp"
