// Copyright 2026 The repodesc Authors.
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

// Umbrella header. The GitHub client (repodesc/github.hpp) and the CLI are
// not included; they need the repodesc_github link target.

#pragma once

#include "repodesc/abstractsum/checkpoint.hpp"
#include "repodesc/abstractsum/decode.hpp"
#include "repodesc/abstractsum/model.hpp"
#include "repodesc/abstractsum/train.hpp"
#include "repodesc/abstractsum/vocab.hpp"
#include "repodesc/agreement.hpp"
#include "repodesc/corpus.hpp"
#include "repodesc/error.hpp"
#include "repodesc/extractive.hpp"
#include "repodesc/lsptest.hpp"
#include "repodesc/purpose.hpp"
#include "repodesc/resources.hpp"
#include "repodesc/rouge.hpp"
#include "repodesc/textcore.hpp"
