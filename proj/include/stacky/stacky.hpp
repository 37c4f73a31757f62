#pragma once

#include "stacky/classify.hpp"
#include "stacky/document.hpp"
#include "stacky/error.hpp"
#include "stacky/isotropy.hpp"
#include "stacky/sheared.hpp"
#include "stacky/stackyfan.hpp"
#include "stacky/zlinalg.hpp"
