#ifndef HRA_HRA_HPP
#define HRA_HRA_HPP

// Everything except fetch.hpp, which needs libcurl and OpenSSL.
#include "hra/criteria.hpp"
#include "hra/csv.hpp"
#include "hra/dataset.hpp"
#include "hra/error.hpp"
#include "hra/hierarchy.hpp"
#include "hra/matrix.hpp"
#include "hra/rank_transform.hpp"
#include "hra/ranking.hpp"
#include "hra/raw_runs.hpp"
#include "hra/report.hpp"
#include "hra/reproduction.hpp"
#include "hra/rtopsis.hpp"
#include "hra/statistics.hpp"

#endif  // HRA_HRA_HPP
