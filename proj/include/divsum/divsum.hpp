#pragma once

#include "divsum/arith.hpp"
#include "divsum/asympt.hpp"
#include "divsum/expsum.hpp"
#include "divsum/farey.hpp"
#include "divsum/fft.hpp"
#include "divsum/l1norm.hpp"
#include "divsum/parallel.hpp"
#include "divsum/phase.hpp"
#include "divsum/report.hpp"
#include "divsum/tables_io.hpp"
#include "divsum/verify.hpp"
