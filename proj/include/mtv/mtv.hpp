#pragma once

#include "mtv/commands.hpp"
#include "mtv/elliptic.hpp"
#include "mtv/io.hpp"
#include "mtv/numerics.hpp"
#include "mtv/spaces.hpp"
#include "mtv/trace.hpp"
