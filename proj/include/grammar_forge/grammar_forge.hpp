#pragma once

#include "grammar_forge/catalog.hpp"
#include "grammar_forge/config.hpp"
#include "grammar_forge/default_catalog.hpp"
#include "grammar_forge/diff.hpp"
#include "grammar_forge/engine.hpp"
#include "grammar_forge/grammar.hpp"
#include "grammar_forge/metrics.hpp"
#include "grammar_forge/scope.hpp"
