#pragma once

#include "phid/circumsphere.hpp"
#include "phid/criticality.hpp"
#include "phid/enclosing_ball.hpp"
#include "phid/errors.hpp"
#include "phid/fiber.hpp"
#include "phid/filtration.hpp"
#include "phid/geometry.hpp"
#include "phid/graph.hpp"
#include "phid/linalg.hpp"
#include "phid/persistence.hpp"
#include "phid/random.hpp"
#include "phid/rigidity.hpp"
