#pragma once

#include "dispersion.hpp"
#include "errors.hpp"
#include "interaction.hpp"
#include "qpm.hpp"
#include "roots.hpp"
#include "spectrum.hpp"
#include "units.hpp"
#include "waveguide.hpp"
