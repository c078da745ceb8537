#pragma once

#include "analyses.hpp"
#include "corpus.hpp"
#include "drive.hpp"
#include "embed.hpp"
#include "eval.hpp"
#include "lang.hpp"
#include "match.hpp"
#include "msg.hpp"
#include "parse.hpp"
#include "supercompile.hpp"
