// Copyright 2026 The tangle4 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "tangle4/convex_roof.hpp"
#include "tangle4/families.hpp"
#include "tangle4/io.hpp"
#include "tangle4/measures.hpp"
#include "tangle4/monogamy.hpp"
#include "tangle4/qstate.hpp"
#include "tangle4/simplex.hpp"
#include "tangle4/slocc.hpp"
#include "tangle4/suites.hpp"
#include "tangle4/tau4.hpp"
