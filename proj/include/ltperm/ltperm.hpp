// Copyright 2026 The ltperm Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "ltperm/additive_perm.hpp"
#include "ltperm/bent.hpp"
#include "ltperm/constructions.hpp"
#include "ltperm/error.hpp"
#include "ltperm/field.hpp"
#include "ltperm/field_fn.hpp"
#include "ltperm/field_tower.hpp"
#include "ltperm/instances.hpp"
#include "ltperm/linear_map.hpp"
#include "ltperm/matrix.hpp"
#include "ltperm/poly.hpp"
#include "ltperm/translators.hpp"
