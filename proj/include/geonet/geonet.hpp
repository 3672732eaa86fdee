#pragma once

#include "geonet/construct.hpp"
#include "geonet/error.hpp"
#include "geonet/geom.hpp"
#include "geonet/io.hpp"
#include "geonet/irreducible.hpp"
#include "geonet/net.hpp"
#include "geonet/solver.hpp"
