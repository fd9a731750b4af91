#pragma once

// Umbrella header.

#include "fisheye/error.hpp"
#include "fisheye/geometry.hpp"
#include "fisheye/green.hpp"
#include "fisheye/specfun.hpp"
#include "fisheye/verify.hpp"
