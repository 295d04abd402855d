#pragma once

#include "mcdm/ahp.hpp"
#include "mcdm/csv_import.hpp"
#include "mcdm/errors.hpp"
#include "mcdm/pipeline.hpp"
#include "mcdm/project_file.hpp"
#include "mcdm/report.hpp"
#include "mcdm/svg_chart.hpp"
#include "mcdm/topsis.hpp"
#include "mcdm/types.hpp"
#include "mcdm/version.hpp"
