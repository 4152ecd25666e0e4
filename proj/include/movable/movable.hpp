#pragma once

#include "movable/geometry.hpp"
#include "movable/contour.hpp"
#include "movable/mover.hpp"
#include "movable/shapes.hpp"
#include "movable/scene_io.hpp"
#include "movable/script.hpp"
#include "movable/svg.hpp"
