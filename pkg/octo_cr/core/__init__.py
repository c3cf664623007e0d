# octo-cr 核心模块
