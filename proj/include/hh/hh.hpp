#pragma once

#include "hh/amalgamation.hpp"
#include "hh/catalog.hpp"
#include "hh/core.hpp"
#include "hh/descriptor.hpp"
#include "hh/homogeneity.hpp"
#include "hh/io.hpp"
#include "hh/labels.hpp"
#include "hh/limits.hpp"
#include "hh/maps.hpp"
#include "hh/multifunction.hpp"
