#pragma once

#include "qg/common.hpp"
#include "qg/element.hpp"
#include "qg/exponent.hpp"
#include "qg/interval.hpp"
#include "qg/io.hpp"
#include "qg/model.hpp"
#include "qg/norms.hpp"
#include "qg/random.hpp"
#include "qg/report.hpp"
#include "qg/similarity.hpp"
#include "qg/transform.hpp"
#include "qg/verify.hpp"
