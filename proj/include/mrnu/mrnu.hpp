#pragma once

#include "mrnu/core_model.hpp"
#include "mrnu/specialfns.hpp"
#include "mrnu/normalization.hpp"
#include "mrnu/quadrature.hpp"
#include "mrnu/spectrum.hpp"
#include "mrnu/wavefunction.hpp"
#include "mrnu/oracle.hpp"
#include "mrnu/units_molecules.hpp"
#include "mrnu/config.hpp"
#include "mrnu/reference_tables.hpp"
#include "mrnu/report.hpp"
