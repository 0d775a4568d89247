#pragma once

#include "errors.hpp"
#include "gfpn.hpp"
#include "weyl_poly.hpp"
#include "ypoly.hpp"
#include "twist.hpp"
#include "sampling.hpp"
#include "structure.hpp"
#include "maps.hpp"
#include "deform.hpp"
#include "expr.hpp"
