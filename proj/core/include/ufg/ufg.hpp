#pragma once

#include "ufg/analysis.hpp"
#include "ufg/davidson.hpp"
#include "ufg/depth.hpp"
#include "ufg/errors.hpp"
#include "ufg/extremal.hpp"
#include "ufg/family.hpp"
#include "ufg/family_io.hpp"
#include "ufg/performance.hpp"
#include "ufg/poset.hpp"
#include "ufg/poset_io.hpp"
#include "ufg/rational.hpp"
#include "ufg/sample.hpp"
#include "ufg/version.hpp"
