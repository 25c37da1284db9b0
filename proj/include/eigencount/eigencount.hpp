#pragma once

#include "eigencount/composition.hpp"
#include "eigencount/countcore.hpp"
#include "eigencount/fq_matrix.hpp"
#include "eigencount/oracle.hpp"
#include "eigencount/qpoly.hpp"
