#ifndef OUL_OUL_HPP
#define OUL_OUL_HPP

#include "oul/constants.hpp"
#include "oul/vector.hpp"
#include "oul/space.hpp"
#include "oul/random.hpp"
#include "oul/parallel.hpp"
#include "oul/minimize.hpp"
#include "oul/report.hpp"
#include "oul/norms.hpp"
#include "oul/order_core.hpp"
#include "oul/nou.hpp"
#include "oul/adjoin.hpp"
#include "oul/states.hpp"

#endif  // OUL_OUL_HPP
