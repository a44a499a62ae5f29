#pragma once

#include "pfkit/dihedral.hpp"
#include "pfkit/dimgroup.hpp"
#include "pfkit/dimgroup_checks.hpp"
#include "pfkit/dyadic.hpp"
#include "pfkit/errors.hpp"
#include "pfkit/language.hpp"
#include "pfkit/paperfold.hpp"
#include "pfkit/pfw.hpp"
#include "pfkit/report.hpp"
#include "pfkit/substitution.hpp"
#include "pfkit/suite.hpp"
#include "pfkit/word.hpp"
