#pragma once

#include "edp/error.hpp"
#include "edp/zlat.hpp"
#include "edp/monogrp.hpp"
#include "edp/stab.hpp"
#include "edp/symrank.hpp"
#include "edp/oracle.hpp"
#include "edp/pipeline.hpp"
#include "edp/io.hpp"
