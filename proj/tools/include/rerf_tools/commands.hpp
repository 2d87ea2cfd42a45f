/*
 * Copyright 2026 The RerF Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

namespace rerf::tools {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUser = 1;  // bad flags, config, data or model
inline constexpr int kExitIo = 2;    // unreadable input or unwritable output

// Entry point of the `rerf` executable: train, predict, sweep, posterior,
// profile. Records go to stdout, diagnostics to stderr.
int run_cli(int argc, char** argv);

}  // namespace rerf::tools
