#ifndef TANGENT_TANGENT_HPP
#define TANGENT_TANGENT_HPP

#include "tangent/algebra.hpp"
#include "tangent/core.hpp"
#include "tangent/elementary.hpp"
#include "tangent/expr.hpp"
#include "tangent/extract.hpp"

#endif  // TANGENT_TANGENT_HPP
