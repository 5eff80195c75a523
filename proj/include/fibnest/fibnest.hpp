#pragma once

#include "fibnest/exact.hpp"
#include "fibnest/fibonacci.hpp"
#include "fibnest/lemma_search.hpp"
#include "fibnest/nest_builder.hpp"
#include "fibnest/oracle.hpp"
#include "fibnest/report.hpp"
#include "fibnest/surd.hpp"
