#pragma once

#include "kthstop/analysis.hpp"
#include "kthstop/closed_form.hpp"
#include "kthstop/dp.hpp"
#include "kthstop/exact_math.hpp"
#include "kthstop/goal.hpp"
#include "kthstop/io.hpp"
#include "kthstop/policy.hpp"
#include "kthstop/policy_eval.hpp"
#include "kthstop/rational.hpp"
#include "kthstop/reward.hpp"
#include "kthstop/simulate.hpp"
