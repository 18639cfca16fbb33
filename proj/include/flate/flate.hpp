#pragma once

#include "flate/bitio.hpp"
#include "flate/code.hpp"
#include "flate/deflate.hpp"
#include "flate/error.hpp"
#include "flate/explist.hpp"
#include "flate/gzip.hpp"
#include "flate/history_window.hpp"
#include "flate/inflate.hpp"
#include "flate/parse.hpp"
#include "flate/prefix_coding.hpp"
#include "flate/symbol_tables.hpp"
