// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef BNSCORE_BNSCORE_HPP
#define BNSCORE_BNSCORE_HPP

#include "model.hpp"
#include "metric.hpp"
#include "posterior.hpp"
#include "k2search.hpp"
#include "study.hpp"
#include "report.hpp"

#endif  // BNSCORE_BNSCORE_HPP
