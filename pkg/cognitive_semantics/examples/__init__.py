"""
Ejemplos trabajados del motor semántico
"""
