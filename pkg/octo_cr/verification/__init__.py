"""验证套件、检查记录与 JSON 报告"""
