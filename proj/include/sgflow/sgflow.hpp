#pragma once

#include "sgflow/balance.hpp"
#include "sgflow/connectivity.hpp"
#include "sgflow/decompose.hpp"
#include "sgflow/duality.hpp"
#include "sgflow/flows.hpp"
#include "sgflow/generators.hpp"
#include "sgflow/graph.hpp"
#include "sgflow/groups.hpp"
#include "sgflow/io.hpp"
#include "sgflow/minors.hpp"
#include "sgflow/oracle.hpp"
#include "sgflow/reduce.hpp"
#include "sgflow/structures.hpp"
