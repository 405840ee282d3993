# SPDX-FileCopyrightText: 2025-present davisj95 <jakealthor+github@proton.me>
#
# SPDX-License-Identifier: MIT
