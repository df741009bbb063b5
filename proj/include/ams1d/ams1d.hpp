#ifndef AMS1D_AMS1D_HPP
#define AMS1D_AMS1D_HPP

#include "ams1d/errors.hpp"
#include "ams1d/rng.hpp"
#include "ams1d/tridiagonal.hpp"
#include "ams1d/mesh.hpp"
#include "ams1d/serialization.hpp"
#include "ams1d/problems.hpp"
#include "ams1d/micro_assembly.hpp"
#include "ams1d/source_recovery.hpp"
#include "ams1d/ms_basis.hpp"
#include "ams1d/macro_assembly.hpp"
#include "ams1d/pipeline.hpp"
#include "ams1d/error_norms.hpp"
#include "ams1d/report_io.hpp"
#include "ams1d/experiment.hpp"

#endif
