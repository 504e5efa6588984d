#pragma once

#include "hamdecomp/census.hpp"
#include "hamdecomp/errors.hpp"
#include "hamdecomp/factorize.hpp"
#include "hamdecomp/graph.hpp"
#include "hamdecomp/multipartite.hpp"
#include "hamdecomp/pipeline.hpp"
#include "hamdecomp/recolour.hpp"
#include "hamdecomp/verify.hpp"
